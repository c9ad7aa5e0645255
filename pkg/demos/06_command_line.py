"""
Driving the command-line front end
==================================

The same runs from Python through ``photonholes.cli.main``.
"""

import tempfile
from pathlib import Path

from photonholes.cli import main

# %% Solve for the four-photon holes
main(["solve", "--n1", "2", "--n2", "2"])

# %% A scan written to a file with a provenance header
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "scan.csv"
    main(["scan", "--n1", "1", "--n2", "1", "--gamma", "1", "--r", "0.01", "--points", "8", "-o", str(path)])
    print(path.read_text(encoding="utf-8"))
