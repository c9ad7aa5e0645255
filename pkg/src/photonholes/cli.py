"""Command-line front end.

Subcommands: ``solve``, ``scan``, ``correlations``, ``reproduce-fig2`` and
``reproduce-fig3``. Any flag can also be given in a ``key = value`` file via
``--config``; flags on the command line win. Output files start with ``#``
header lines recording every parameter, followed by comma-separated rows.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .correlations import g_mn, poisson_mixture
from .detection import DetectorArray, bound_violation_sigma
from .errors import ConfigError, PhotonHolesError
from .fock import CutoffPolicy
from .holes import HoleSpec, solve_holes
from .scan import PRESET_R, ScanConfig, fig2_config, fig3_config, output_distribution, phase_grid, phase_scan
from .twomode import JointDistribution

COMMANDS = ("solve", "scan", "correlations", "reproduce-fig2", "reproduce-fig3")
SCAN_COLUMNS = ("phi", "coincidence_prob", "singles1", "singles2", "g_mn", "classical_floor")


class Number(float):
    """A float that remembers how it was spelled, for provenance headers."""

    text: str

    def __new__(cls, text):
        obj = super().__new__(cls, float(text))
        obj.text = str(text).strip()
        return obj


class Integer(int):
    text: str

    def __new__(cls, text):
        obj = super().__new__(cls, int(str(text).strip()))
        obj.text = str(text).strip()
        return obj


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _add_policy(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tail-epsilon", type=Number, default=Number("1e-12"))
    p.add_argument("--hard-max", type=Integer, default=Integer("128"))


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", type=Path, default=None, help="write results to this file")


def _add_scan_options(p: argparse.ArgumentParser, eta_default: str, r_default: str) -> None:
    p.add_argument("--r", type=Number, default=Number(r_default), help="squeeze parameter")
    p.add_argument("--eta", type=Number, default=Number(eta_default), help="overall transmission per detector")
    p.add_argument("--points", type=Integer, default=Integer("128"), help="phase points over [0, 2pi)")
    p.add_argument("--pulses", type=Integer, default=None, help="pump pulses for shot-noise significance")
    p.add_argument("--workers", type=Integer, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="photonholes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find (gamma, phi) canceling an (N1, N2) coincidence")
    p.add_argument("--n1", type=Integer, required=True)
    p.add_argument("--n2", type=Integer, required=True)
    p.add_argument("--r", type=Number, default=Number("1e-4"))
    p.add_argument("--gamma-max", type=Number, default=None)
    _add_policy(p)
    _add_output(p)

    p = sub.add_parser("scan", help="coincidence probability versus phase")
    p.add_argument("--n1", type=Integer, required=True)
    p.add_argument("--n2", type=Integer, required=True)
    amp = p.add_mutually_exclusive_group(required=True)
    amp.add_argument("--gamma", type=Number)
    amp.add_argument("--gamma2", type=Number, help="gamma squared")
    amp.add_argument("--alpha", type=Number, help="coherent amplitude |alpha|, independent of r")
    _add_scan_options(p, eta_default="1", r_default=repr(PRESET_R))
    p.add_argument("--k1", type=Integer, default=None, help="detectors on mode 1 (omit for number resolving)")
    p.add_argument("--k2", type=Integer, default=None, help="detectors on mode 2 (0 = unmonitored)")
    p.add_argument("--eta2", type=Number, default=None, help="mode 2 transmission if different")
    _add_policy(p)
    _add_output(p)

    p = sub.add_parser("correlations", help="classical-bound property check and hole-state g values")
    p.add_argument("--trials", type=Integer, default=Integer("1000"))
    p.add_argument("--seed", type=Integer, default=Integer("0"))
    p.add_argument("--max-components", type=Integer, default=Integer("5"))
    p.add_argument("--max-mean", type=Number, default=Number("3"))
    p.add_argument("--r", type=Number, default=Number("1e-4"), help="squeezing for the hole states")
    _add_policy(p)
    _add_output(p)

    for name, doc in (("reproduce-fig2", "(2, 2) hole at gamma^2 = 3"), ("reproduce-fig3", "(5, 0) hole")):
        p = sub.add_parser(name, help=f"preset scan: {doc}")
        _add_scan_options(p, eta_default="0.125", r_default=repr(PRESET_R))
        _add_policy(p)
        _add_output(p)
    return parser


def read_config(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    pairs = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        pairs[key.replace("_", "-")] = value
    return pairs


def _expand_argv(argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, rest = pre.parse_known_args(argv)
    if known.config is None:
        return rest
    pairs = read_config(known.config)
    command = pairs.pop("command", None)
    if rest and rest[0] in COMMANDS:
        command, rest = rest[0], rest[1:]
    if command is None:
        raise ConfigError("no subcommand given on the command line or in the config file")
    tokens = []
    for key, value in pairs.items():
        tokens += [f"--{key}", value]
    return [command, *tokens, *rest]


def _header(args: argparse.Namespace) -> list[str]:
    lines = [f"# photonholes {__version__} {args.command}"]
    for key, value in sorted(vars(args).items()):
        if key in ("command", "output") or value is None:
            continue
        lines.append(f"# {key.replace('_', '-')} = {getattr(value, 'text', value)}")
    return lines


def _write(args, lines: list[str], rows, columns) -> None:
    if args.output is None:
        return
    body = _header(args) + ["# " + ",".join(columns)]
    body += [",".join(_fmt(v) for v in row) for row in rows]
    body += [f"# {line}" for line in lines]
    args.output.write_text("\n".join(body) + "\n", encoding="utf-8")


def _policy(args) -> CutoffPolicy:
    try:
        return CutoffPolicy(float(args.tail_epsilon), int(args.hard_max))
    except ValueError as exc:
        raise ConfigError(f"--tail-epsilon/--hard-max: {exc}") from None


def cmd_solve(args) -> list[str]:
    gamma_max = math.inf if args.gamma_max is None else float(args.gamma_max)
    try:
        spec = HoleSpec(int(args.n1), int(args.n2), float(args.r), gamma_max)
    except ValueError as exc:
        raise ConfigError(f"--n1/--n2/--r: {exc}") from None
    solutions = solve_holes(spec, _policy(args))
    out = [f"{'root':>4} {'gamma':>12} {'gamma^2':>12} {'phi':>10} {'phi+pi':>10} {'phi/pi':>8} {'residual':>10}"]
    rows = []
    for s in solutions:
        out.append(
            f"{s.root_index:>4d} {s.gamma:>12.6f} {s.gamma_squared:>12.6f} {s.phi:>10.6f} "
            f"{s.phi + math.pi:>10.6f} {s.phi / math.pi:>8.5f} {s.residual:>10.2e}"
        )
        rows.append((s.root_index, s.gamma, s.gamma_squared, s.phi, s.phi + math.pi, s.residual))
    _write(args, [], rows, ("root", "gamma", "gamma2", "phi", "phi_plus_pi", "residual"))
    return out


def _scan_summary(result, pulses) -> list[str]:
    lines = [f"visibility = {result.visibility:.6f}", f"minima = {len(result.minima)}"]
    for i in result.minima:
        line = (
            f"phi = {result.phi[i]:.6f}  coincidence = {result.coincidence[i]:.6e}  "
            f"floor = {result.floor[i]:.6e}  g = {result.g[i]:.6f}  margin = {result.g[i] - 1:+.6f}"
        )
        if pulses:
            line += f"  sigma = {bound_violation_sigma(result.coincidence[i], result.floor[i], pulses):.3f}"
        lines.append(line)
    return lines


def _run_scan(args, config: ScanConfig) -> list[str]:
    result = phase_scan(config)
    lines = _scan_summary(result, config.pulses)
    _write(args, lines, result.rows(), SCAN_COLUMNS)
    return lines


def cmd_scan(args) -> list[str]:
    if args.alpha is not None:
        gamma = None
    elif args.gamma is not None:
        gamma = float(args.gamma)
    else:
        gamma = math.sqrt(float(args.gamma2))
    eta2 = float(args.eta if args.eta2 is None else args.eta2)
    try:
        d1 = DetectorArray(None if args.k1 is None else int(args.k1), float(args.eta))
        if args.k2 is not None and int(args.k2) == 0:
            d2 = None
        else:
            d2 = DetectorArray(None if args.k2 is None else int(args.k2), eta2)
    except ValueError as exc:
        raise ConfigError(f"detector options: {exc}") from None
    config = ScanConfig(
        n1=int(args.n1),
        n2=int(args.n2),
        gamma=gamma,
        r=float(args.r),
        detectors1=d1,
        detectors2=d2,
        phi_grid=phase_grid(int(args.points)),
        pulses=None if args.pulses is None else int(args.pulses),
        policy=_policy(args),
        workers=None if args.workers is None else int(args.workers),
        alpha=None if args.alpha is None else float(args.alpha),
    )
    return _run_scan(args, config)


def _preset(args, factory) -> list[str]:
    config = factory(
        r=float(args.r),
        eta=float(args.eta),
        points=int(args.points),
        pulses=None if args.pulses is None else int(args.pulses),
        policy=_policy(args),
        workers=None if args.workers is None else int(args.workers),
    )
    lines = []
    if math.isclose(float(args.r), PRESET_R):
        lines.append(f"note: r = {PRESET_R} is an assumed squeezing, not a measured value")
    return lines + _run_scan(args, config)


def cmd_correlations(args) -> list[str]:
    rng = np.random.default_rng(int(args.seed))
    policy = _policy(args)
    orders = ((1, 1), (2, 2), (5, 0))
    worst = {o: math.inf for o in orders}
    rows = []
    for trial in range(int(args.trials)):
        marginals = []
        for _ in range(2):
            size = int(rng.integers(1, int(args.max_components) + 1))
            means = rng.uniform(0.01, float(args.max_mean), size)
            marginals.append(poisson_mixture(means, rng.dirichlet(np.ones(size)), 5, policy))
        dist = JointDistribution.product(*marginals)
        values = [g_mn(dist, m, n).value for m, n in orders]
        for o, v in zip(orders, values):
            worst[o] = min(worst[o], v)
        rows.append((trial, *values))
    lines = [f"separable Poissonian mixtures: {int(args.trials)} trials, seed {int(args.seed)}"]
    for (m, n), v in worst.items():
        lines.append(f"min g^({m},{n}) = {v:.12f}  {'ok' if v >= 1 - 1e-10 else 'VIOLATED'}")
    for n1, n2 in orders:
        for s in solve_holes(HoleSpec(n1, n2, float(args.r)), policy):
            magnitude = math.sqrt(s.gamma * float(args.r))
            dist = output_distribution(magnitude, s.phi, float(args.r), policy, 2 * (n1 + n2) + 4)
            g = g_mn(dist, n1, n2).value
            lines.append(f"hole ({n1},{n2}) gamma = {s.gamma:.6f} phi = {s.phi:.6f}: g^({n1},{n2}) = {g:.6e}")
    _write(args, lines, rows, ("trial", "g11", "g22", "g50"))
    return lines


HANDLERS = {
    "solve": cmd_solve,
    "scan": cmd_scan,
    "correlations": cmd_correlations,
    "reproduce-fig2": lambda a: _preset(a, fig2_config),
    "reproduce-fig3": lambda a: _preset(a, fig3_config),
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_argv(argv))
        lines = HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"photonholes: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except PhotonHolesError as exc:
        print(f"photonholes: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    print("\n".join(lines))
    return 0
