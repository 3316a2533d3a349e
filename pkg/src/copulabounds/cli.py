"""Command-line front end.

Evaluates measures, tabulates envelopes and attainable regions, audits the
copula axioms, and samples supports; every command emits CSV (comma
separated, LF line endings, floats at six decimals) to stdout or --out.

Exit codes: 0 success, 2 usage or spec-parse errors, 3 semantic rejection
(out-of-range parameters, invalid specs, sampling a proper quasi-copula).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import concordance, core, effectiveness, footrule, gini, regions


class SpecParseError(ValueError):
    """A copula spec string or shuffle file could not be parsed."""


class NotACopulaError(ValueError):
    """The spec denotes a proper quasi-copula; sampling is refused."""


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        s = f"{value:.6f}"
        return "0.000000" if s == "-0.000000" else s
    return str(value)


@dataclass
class CsvTable:
    header: list
    rows: list

    def render(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(_fmt(x) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def _load_shuffle(path: str) -> core.ShuffleSpec:
    """Shuffle file: one line per piece ``t_start,t_end,target_index,orientation``."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise SpecParseError(f"cannot read shuffle file {path}: {exc}") from exc
    pieces = []
    for ln in lines:
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split(",")
        if len(parts) != 4:
            raise SpecParseError(f"bad shuffle line {ln!r}: expected 4 fields")
        try:
            pieces.append((float(parts[0]), float(parts[1]), int(parts[2]), int(parts[3])))
        except ValueError as exc:
            raise SpecParseError(f"bad shuffle line {ln!r}: {exc}") from exc
    if not pieces:
        raise SpecParseError(f"shuffle file {path} has no pieces")
    pieces.sort(key=lambda p: p[0])
    cuts = [pieces[0][0]]
    for start, end, _, _ in pieces:
        if abs(start - cuts[-1]) > 1e-9:
            raise SpecParseError("shuffle pieces must tile [0, 1] contiguously")
        cuts.append(end)
    return core.ShuffleSpec(tuple(cuts),
                            tuple(p[2] for p in pieces),
                            tuple(p[3] for p in pieces))


def parse_copula_spec(text: str) -> core.BivariateFunction:
    """Grammar: W | M | Pi | f-lower:<phi> | f-upper:<phi> | g-lower:<gamma>
    | g-upper:<gamma> | extremal:<kind>,<a>,<b>,<c> | shuffle:<file>."""
    if text == "W":
        return core.W
    if text == "M":
        return core.M
    if text == "Pi":
        return core.PI
    name, sep, rest = text.partition(":")
    if not sep:
        raise SpecParseError(f"unknown copula spec {text!r}")
    if name == "shuffle":
        return core.ShuffleOfMin(_load_shuffle(rest))
    if name == "extremal":
        parts = rest.split(",")
        if len(parts) != 4:
            raise SpecParseError(f"extremal spec needs kind,a,b,c, got {rest!r}")
        try:
            a, b, c = (float(x) for x in parts[1:])
        except ValueError as exc:
            raise SpecParseError(f"bad extremal parameters {rest!r}") from exc
        return core.ExtremalCopula(core.ExtremalSpec(a, b, c, parts[0]))
    try:
        param = float(rest)
    except ValueError as exc:
        raise SpecParseError(f"bad parameter in spec {text!r}") from exc
    makers = {
        "f-lower": footrule.FootruleLowerBound,
        "f-upper": footrule.FootruleUpperBound,
        "g-lower": gini.GiniLowerBound,
        "g-upper": gini.GiniUpperBound,
    }
    if name not in makers:
        raise SpecParseError(f"unknown copula spec {text!r}")
    return makers[name](param)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> CsvTable:
    func = parse_copula_spec(args.spec)
    quad = concordance.QuadratureConfig(args.n)
    if args.measure == "phi":
        value = concordance.spearman_footrule(func, quad)
    elif args.measure == "gamma":
        value = concordance.gini_gamma(func, quad)
    else:
        value = concordance.blomqvist_beta(func)
    return CsvTable(["measure", "spec", "value"], [(args.measure, args.spec, value)])


def _grid_value_and_region(bound: str, param: float):
    if bound == "f-lower":
        footrule._check_phi(param)
        return (lambda u, v: footrule.footrule_lower_bound(param, u, v),
                lambda u, v: np.zeros(np.broadcast(np.asarray(u), np.asarray(v)).shape, dtype=int),
                footrule.DELTA_LABELS)
    if bound == "f-upper":
        return (lambda u, v: footrule.footrule_upper_bound(param, u, v),
                lambda u, v: footrule.delta_region(param, u, v),
                footrule.DELTA_LABELS)
    if bound == "g-upper":
        return (lambda u, v: gini.gini_upper_bound(param, u, v),
                lambda u, v: gini.omega_region(param, u, v),
                gini.OMEGA_LABELS)
    # the lower gamma envelope is governed by the reflected upper piece
    gini._check_gamma(param)
    return (lambda u, v: gini.gini_lower_bound(param, u, v),
            lambda u, v: gini.omega_region(-param, u, 1.0 - np.asarray(v, dtype=float)),
            gini.OMEGA_LABELS)


def cmd_grid(args) -> CsvTable:
    if args.n < 2:
        raise core.OutOfRangeError("grid resolution must be >= 2")
    value_fn, region_fn, labels = _grid_value_and_region(args.bound, args.param)
    t = np.arange(args.n + 1) / args.n
    vals = value_fn(t[:, None], t[None, :])
    codes = region_fn(t[:, None], t[None, :])
    rows = []
    for i, a in enumerate(t):
        for j, b in enumerate(t):
            rows.append((a, b, vals[i, j], labels[codes[i, j]]))
    return CsvTable(["a", "b", "value", "region"], rows)


def cmd_table1(args) -> CsvTable:
    rows = [(r.kind, r.k, r.m) for r in effectiveness.table_rows(args.n)]
    return CsvTable(["kind", "k", "m"], rows)


def cmd_region(args) -> CsvTable:
    if not (0.0 < args.step <= 0.1):
        raise core.OutOfRangeError("step must lie in (0, 0.1]")
    if args.pair == "phi-beta":
        lo_k, range_fn = -0.5, regions.beta_range_given_footrule
    else:
        lo_k, range_fn = -1.0, regions.beta_range_given_gini
    count = int(round((1.0 - lo_k) / args.step))
    ks = lo_k + args.step * np.arange(count + 1)
    ks[-1] = min(ks[-1], 1.0)
    rows = []
    for k in ks:
        lo, hi = range_fn(min(float(k), 1.0))
        rows.append((float(k), lo, hi))
    return CsvTable(["k", "beta_lo", "beta_hi"], rows)


def _draw(func, count: int, seed: int) -> np.ndarray:
    if isinstance(func, core.ExtremalCopula):
        return core.sample_shuffle(func.as_shuffle(), count, seed)
    if isinstance(func, core.ShuffleOfMin):
        return core.sample_shuffle(func.spec, count, seed)
    if isinstance(func, core.FrechetUpper):
        return core.sample_shuffle(core.IDENTITY_SHUFFLE, count, seed)
    if isinstance(func, core.FrechetLower):
        return core.sample_shuffle(core.REVERSAL_SHUFFLE, count, seed)
    if isinstance(func, core.Independence):
        rng = np.random.default_rng(seed)
        return rng.random((count, 2))
    return core.sample_conditional(func, count, seed)


def cmd_sample(args) -> CsvTable:
    func = parse_copula_spec(args.spec)
    if args.count < 1:
        raise core.OutOfRangeError("count must be >= 1")
    seed = _pick(args.seed_pos, args.seed_flag, 0)
    report = core.check_quasicopula(func, n=200, tol=1e-9)
    if not (report.is_quasicopula and report.is_two_increasing):
        raise NotACopulaError(
            f"spec {args.spec!r} is not a copula "
            f"(worst cell volume {report.worst_volume:.3g}); refusing to sample"
        )
    pts = _draw(func, args.count, seed)
    return CsvTable(["u", "v"], [(float(u), float(v)) for u, v in pts])


def cmd_check(args) -> CsvTable:
    func = parse_copula_spec(args.spec)
    n = _pick(args.n_pos, args.n_flag, 200)
    tol = _pick(args.tol_pos, args.tol_flag, 1e-9)
    report = core.check_quasicopula(func, n=n, tol=tol)
    lo, hi = report.worst_rectangle
    row = (report.is_quasicopula, report.is_two_increasing, report.worst_volume,
           lo.u, lo.v, hi.u, hi.v,
           report.lipschitz_violation, report.margin_violation)
    return CsvTable(["is_quasicopula", "is_two_increasing", "worst_volume",
                     "lo_u", "lo_v", "hi_u", "hi_v",
                     "lipschitz_violation", "margin_violation"], [row])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="copulabounds",
        description="Envelopes of copulas with a fixed footrule or Gini gamma; CSV output.",
    )
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a measure of a copula spec")
    p.add_argument("measure", choices=["phi", "gamma", "beta"])
    p.add_argument("spec")
    p.add_argument("--n", type=int, default=2048, help="quadrature panels")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("grid", help="tabulate an envelope on an n x n node grid")
    p.add_argument("bound", choices=["f-lower", "f-upper", "g-lower", "g-upper"])
    p.add_argument("param", type=float)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("table1", help="effectiveness of both measures on the canonical k grid")
    p.add_argument("--n", type=int, default=2048, help="Simpson panels per axis")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("region", help="attainable (measure, beta) boundary curves")
    p.add_argument("pair", choices=["phi-beta", "gamma-beta"])
    p.add_argument("--step", type=float, default=0.05)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("sample", help="sample a copula spec (quasi-copulas are refused)")
    p.add_argument("spec")
    p.add_argument("count", type=int)
    p.add_argument("seed_pos", metavar="seed", type=int, nargs="?", default=None)
    p.add_argument("--seed", dest="seed_flag", type=int, default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("check", help="audit the quasi-copula axioms on a grid")
    p.add_argument("spec")
    p.add_argument("n_pos", metavar="n", type=int, nargs="?", default=None)
    p.add_argument("tol_pos", metavar="tol", type=float, nargs="?", default=None)
    p.add_argument("--n", dest="n_flag", type=int, default=None)
    p.add_argument("--tol", dest="tol_flag", type=float, default=None)
    p.set_defaults(func=cmd_check)

    return parser


def _pick(positional, flag, default):
    if positional is not None:
        return positional
    if flag is not None:
        return flag
    return default


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        table = args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (core.OutOfRangeError, core.InvalidSpecError, core.NotMonotoneError,
            concordance.NotACopulaGridError, NotACopulaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = table.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
