"""Command-line front end: ``pbeauty {phi,roots,critical,simulate,h2h}``.

Every subcommand writes to ``--out`` (standard output by default). CSV
values carry 12 significant digits; absent values are empty strings.
Exit codes: 0 success, 2 usage or domain error, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
from typing import Iterable, Optional, Sequence

import numpy as np

from pbeauty import analysis
from pbeauty.dynamics import PayoutKind, PayoutScheme, simulate
from pbeauty.errors import ConvergenceError, DomainError
from pbeauty.model import GameConfig, PopulationState, guess


class UsageError(Exception):
    pass


def fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.12g}"


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` (inclusive, linear) or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid {text!r} must be start:stop:count")
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise UsageError(f"grid {text!r} needs count >= 1")
            if count == 1:
                if start != stop:
                    raise UsageError(f"grid {text!r} with count 1 needs start == stop")
                return [start]
            return [float(v) for v in np.linspace(start, stop, count)]
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"malformed grid {text!r}: {exc}") from None
    if not values:
        raise UsageError("empty grid")
    return values


def parse_m_list(text: str) -> list[float]:
    """Like :func:`parse_grid`, but list entries may be ``inf``."""
    if ":" in text:
        return parse_grid(text)
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok in ("inf", "infinity"):
            out.append(math.inf)
        else:
            try:
                out.append(float(tok))
            except ValueError:
                raise UsageError(f"malformed m value {tok!r}") from None
    if not out:
        raise UsageError("empty m list")
    return out


def parse_int_range(text: str) -> list[int]:
    """``start:stop[:step]`` inclusive integer range, or a comma list."""
    try:
        if ":" in text:
            parts = [int(v) for v in text.split(":")]
            if len(parts) not in (2, 3):
                raise UsageError(f"range {text!r} must be start:stop[:step]")
            step = parts[2] if len(parts) == 3 else 1
            if step < 1:
                raise UsageError("range step must be >= 1")
            values = list(range(parts[0], parts[1] + 1, step))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"malformed integer range {text!r}: {exc}") from None
    if not values:
        raise UsageError(f"range {text!r} is empty")
    if min(values) < 2:
        raise UsageError("population sizes must be >= 2")
    return values


@contextlib.contextmanager
def _open_out(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _write_csv(path: Optional[str], header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# -- subcommands -----------------------------------------------------------

def phi_rows(ps: Sequence[float], ms: Sequence[float], N: Optional[int]):
    for m in ms:
        for p in ps:
            if math.isinf(m):
                val = (analysis.phi_infinite_limit(p) if N is None
                       else analysis.phi_finite_limit_m(p, N))
            else:
                val = analysis.phi_infinite(p, m) if N is None else analysis.phi_finite(p, N, m)
            yield [fmt(p), fmt(val), fmt(m), "" if N is None else str(N)]


def cmd_phi(args) -> None:
    ps = parse_grid(args.p)
    ms = parse_m_list(args.m)
    rows = list(phi_rows(ps, ms, args.N))
    _write_csv(args.out, ["p", "phi", "m", "N"], rows)


def roots_rows(ms: Sequence[float], N: Optional[int], tol: float):
    for m in ms:
        if N is None:
            pm = analysis.p_min(m) if m > 1 else None
            if m <= 2:
                _warn(f"m={fmt(m)} <= 2: no root in (1/2, 1)")
                ps = None
            else:
                ps = analysis.p_star_infinite(m, tol).p_star
            yield [fmt(m), fmt(ps), fmt(pm)]
        else:
            res = analysis.p_star_finite(N, m, tol) if m > 0 else None
            if res is None:
                _warn(f"N={N}, m={fmt(m)}: no root in (1/2, 1)")
            yield [fmt(m), fmt(None if res is None else res.p_star), ""]


def cmd_roots(args) -> None:
    ms = parse_grid(args.m)
    rows = list(roots_rows(ms, args.N, args.tol))
    _write_csv(args.out, ["m", "p_star", "p_min"], rows)


def cmd_critical(args) -> None:
    Ns = parse_int_range(args.N)
    curve = analysis.m_star_curve(Ns, tol=args.tol, m_max=args.m_max, jobs=args.jobs)
    _write_csv(args.out, ["N", "m_star"], ([str(pt.N), fmt(pt.m_star)] for pt in curve))


SIM_KEYS = {
    "p", "c", "initial", "scheme", "selection_strength", "epsilon",
    "max_steps", "fixation_threshold",
}


def read_sim_config(text: str) -> dict:
    """Parse the flat ``key = value`` simulation config."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in SIM_KEYS:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        raw[key] = value
    for key in ("p", "initial"):
        if key not in raw:
            raise UsageError(f"config is missing {key!r}")
    try:
        freqs: dict[float, float] = {}
        for item in raw["initial"].split(","):
            k, x = item.split(":")
            freqs[float(k)] = freqs.get(float(k), 0.0) + float(x)
        eps = raw.get("epsilon")
        return {
            "cfg": GameConfig(float(raw["p"]), float(raw.get("c", 50.0))),
            "initial": PopulationState.from_freqs(freqs),
            "scheme": PayoutScheme(
                PayoutKind(raw.get("scheme", "inverse_distance")),
                float(raw.get("selection_strength", 0.5)),
                None if eps is None else float(eps),
            ),
            "max_steps": int(raw.get("max_steps", 10**5)),
            "fixation_threshold": float(raw.get("fixation_threshold", 1e-6)),
        }
    except ValueError as exc:
        # DomainError is a ValueError too; all of these are usage errors here
        raise UsageError(f"bad config: {exc}") from None


def cmd_simulate(args) -> None:
    with open(args.config, encoding="utf-8") as fh:
        conf = read_sim_config(fh.read())
    traj = simulate(
        conf["initial"], conf["cfg"], conf["scheme"],
        max_steps=conf["max_steps"], fixation_threshold=conf["fixation_threshold"],
    )
    header = ["gen", "target"] + [f"k_{fmt(k)}" for k in traj.ks]
    rows = (
        [str(g), fmt(t)] + [fmt(x) for x in xs]
        for g, (t, xs) in enumerate(zip(traj.target_series, traj.steps))
    )
    _write_csv(args.out, header, rows)
    if traj.fixation is None:
        print(f"fixated=none generation={len(traj.steps) - 1}")
    else:
        print(f"fixated={fmt(traj.fixation.winner.k)} generation={traj.fixation.generation}")


def h2h_report(k: float, m: float, p: float, c: float) -> str:
    cf_low, cf_high = analysis.head_to_head_closed_form(k, m, p, c)
    d_low, d_high = analysis.head_to_head_distances(k, m, p, c)
    margin = analysis.head_to_head_margin(k, m, p, c)
    cfg = GameConfig(p, c)
    g_low, g_high = guess(k, cfg), guess(k + m, cfg)
    target = p * (g_low + g_high) / 2
    if d_high < d_low:
        winner = f"k+m={fmt(k + m)} (higher step)"
    elif d_low < d_high:
        winner = f"k={fmt(k)} (lower step)"
    else:
        winner = "tie"
    lines = [
        f"guesses: k={fmt(k)} -> {fmt(g_low)}, k+m={fmt(k + m)} -> {fmt(g_high)}",
        f"target: {fmt(target)}",
        f"closed-form distances: low={fmt(cf_low)} high={fmt(cf_high)}",
        f"true distances: low={fmt(d_low)} high={fmt(d_high)}",
        f"margin c p^k (1-p)(1+p^m): {fmt(margin.value)}",
        f"true margin: {fmt(d_low - d_high)}",
        f"winner: {winner}",
    ]
    if cf_high < 0:
        lines.append("note: higher-step guess lies above the target; closed-form high distance is negative")
    return "\n".join(lines) + "\n"


def cmd_h2h(args) -> None:
    report = h2h_report(args.k, args.m, args.p, args.c)
    with _open_out(args.out) as fh:
        fh.write(report)


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbeauty", description="p-beauty contest level-k analysis"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        return sp

    sp = add("phi", "tabulate the advantage function")
    sp.add_argument("--p", required=True, help="p grid, start:stop:count or list")
    sp.add_argument("--m", required=True, help="m values; 'inf' selects the limit curve")
    sp.add_argument("--N", type=int, default=None, help="finite population size")
    sp.set_defaults(func=cmd_phi)

    sp = add("roots", "critical p* and p_min over an m grid")
    sp.add_argument("--m", required=True)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--tol", type=float, default=analysis.DEFAULT_TOL)
    sp.set_defaults(func=cmd_roots)

    sp = add("critical", "trace the m*(N) curve")
    sp.add_argument("--N", required=True, help="start:stop[:step] or list")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--m-max", type=float, default=100.0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_critical)

    sp = add("simulate", "run the discrete replicator dynamic")
    sp.add_argument("config", help="key = value config file")
    sp.set_defaults(func=cmd_simulate)

    sp = add("h2h", "head-to-head comparison of k and k+m players")
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--m", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--c", type=float, default=50.0)
    sp.set_defaults(func=cmd_h2h)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, DomainError, OSError) as exc:
        print(f"pbeauty {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"pbeauty {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
