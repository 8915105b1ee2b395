"""Command-line entry point: ``cubicspin <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import Decimal, InvalidOperation
from typing import Sequence, TextIO

import numpy as np

from .analysis import (
    PoissonWindow,
    ResidueSystem,
    default_centers,
    default_checkpoints,
    format_counts,
    is_cube_up_to_unit,
    is_rational_primitive,
    lambda3_counts,
    poisson_check,
    pv_scan,
    scan,
)
from .cubic import cubic_symbol, format_value
from .eisenstein import Eis, ParseError, coprime_to_3, eis_norm, parse_eis, primary_associate
from .primes import CSV_HEADER, prime_ideals_up_to
from .spin import spin_ideal
from .verify import DEFAULT_NORM_BOUND, DEFAULT_SEED, SUITES, run_suite
from .zeta12 import parse_z12


def parse_count(text: str) -> int:
    """Integers, also written as ``1e5``."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def parse_list(text: str) -> list[int]:
    return [parse_count(t) for t in text.split(",") if t]


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def emit(rows: list[dict], fmt: str, out: TextIO, header: str | None = None) -> None:
    """CSV with a header row, or a JSON array of the same records."""
    if fmt == "json":
        # NaN is not valid JSON; an empty ratio becomes null
        rows = [{k: None if isinstance(v, float) and math.isnan(v) else v for k, v in r.items()} for r in rows]
        json.dump(rows, out, indent=None, separators=(",", ":"))
        out.write("\n")
        return
    if header:
        out.write(header + "\n")
    if not rows:
        return
    out.write(",".join(rows[0]) + "\n")
    for row in rows:
        out.write(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row.values()) + "\n")


# -- subcommands --------------------------------------------------------------------

def cmd_symbol(args, out):
    out.write(format_value(cubic_symbol(parse_eis(args.a), parse_eis(args.b))) + "\n")
    return 0


def cmd_spin(args, out):
    z = parse_z12(args.z)
    if not z:
        raise ParseError(args.z, 0, "the zero element has no spin")
    out.write(format_value(spin_ideal(z)) + "\n")
    return 0


def cmd_primes(args, out):
    recs = prime_ideals_up_to(args.xmax, args.workers)
    if args.format == "json":
        rows = [dict(zip(CSV_HEADER.split(","), r.csv_row().split(","))) for r in recs]
        emit(rows, "json", out)
        return 0
    out.write(CSV_HEADER + "\n")
    for r in recs:
        out.write(r.csv_row() + "\n")
    return 0


def cmd_sum(args, out):
    cps = args.checkpoints or default_checkpoints(args.xmax)
    spins, _ = scan(args.xmax, cps, args.workers)
    rows = [{"x": r.x, "c1": r.c1, "cw": r.cw, "cw2": r.cw2, "zeros": r.zeros, "total": r.total,
             "re_S": float(r.re_s)} for r in spins]
    emit(rows, args.format, out)
    return 0


def cmd_cube_prop(args, out):
    if args.xmax < 13:
        raise argparse.ArgumentTypeError("--xmax must be at least 13")
    cps = args.checkpoints or default_checkpoints(args.xmax)
    _, cubes = scan(args.xmax, cps, args.workers)
    rows = [{"x": r.x, "hits": r.hits, "total": r.total, "ratio": float(r.ratio)} for r in cubes]
    emit(rows, args.format, out)
    return 0


def cmd_lambda3(args, out):
    if args.n < 1:
        raise argparse.ArgumentTypeError("N must be positive")
    out.write(format_counts(*lambda3_counts(args.n)) + "\n")
    return 0


def primary_moduli(max_norm: int) -> list[Eis]:
    """One primary generator (= 1 mod 3) of every ideal prime to 3 with norm <= max_norm."""
    b = math.isqrt(4 * max_norm // 3) + 1
    found = set()
    for a1 in range(-b, b + 1):
        for a2 in range(-b, b + 1):
            e = Eis(a1, a2)
            if 0 < eis_norm(e) <= max_norm and coprime_to_3(e):
                found.add(primary_associate(e)[1])
    return sorted(found, key=lambda e: (eis_norm(e), e.a1, e.a2))


def poisson_rows(qnorm: int, Ks: Sequence[float], H: int | None, seed: int) -> list[dict]:
    """Worst error over every primary q of norm <= qnorm and every residue beta."""
    rng = np.random.Generator(np.random.Philox(seed))
    rows = []
    for K in Ks:
        worst: dict[int, tuple[float, float]] = {}
        for q in primary_moduli(qnorm):
            x0, y0 = (float(v) for v in rng.uniform(0, 1, 2))
            rs = ResidueSystem.of(q)
            xs, ys = rs.reps()
            for bx, by in zip(xs, ys):
                res = poisson_check(PoissonWindow(K, x0, y0, q, Eis(int(bx), int(by))), H)
                n = eis_norm(q)
                if n not in worst or res.rel_err > worst[n][1]:
                    worst[n] = (res.abs_err, res.rel_err)
        for n in sorted(worst):
            rows.append({"q_norm": n, "K": float(K), "abs_err": worst[n][0], "rel_err": worst[n][1]})
    return rows


def cmd_poisson(args, out):
    rows = poisson_rows(args.qnorm, args.K, args.H, args.seed)
    emit(rows, args.format, out, header=None if args.format == "json" else f"# seed={args.seed}")
    return 0


def random_pv_moduli(count: int, qnorm_max: int, rng: np.random.Generator) -> list[Eis]:
    """Distinct seeded primary, rationally primitive, non-cube moduli of norm in (1, qnorm_max]."""
    b = math.isqrt(4 * qnorm_max // 3)
    out: list[Eis] = []
    seen: set[Eis] = set()
    while len(out) < count:
        e = Eis(*(int(v) for v in rng.integers(-b, b + 1, 2)))
        n = eis_norm(e)
        if not 1 < n <= qnorm_max or not coprime_to_3(e) or not is_rational_primitive(e):
            continue
        if is_cube_up_to_unit(e):
            continue
        q = primary_associate(e)[1]
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


def pv_rows(qnorm_max: int, count: int, seed: int) -> list[dict]:
    rng = np.random.Generator(np.random.Philox(seed))
    rows = []
    for q in random_pv_moduli(count, qnorm_max, rng):
        n = eis_norm(q)
        for K in (n ** 0.25, n ** 0.5):
            ratio = pv_scan(q, K, default_centers(n, K, 4, rng))
            rows.append({"q_norm": n, "K": float(K), "max_ratio": float(ratio)})
    return rows


def cmd_pv(args, out):
    rows = pv_rows(args.qnorm_max, args.count, args.seed)
    emit(rows, args.format, out, header=None if args.format == "json" else f"# seed={args.seed}")
    return 0


def cmd_verify(args, out):
    reports = run_suite(args.suite, args.samples, args.norm_bound, args.seed)
    for rep in reports:
        out.write(json.dumps(rep, sort_keys=False) + "\n")
    return 1 if any(r["failures"] for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicspin", description="Cubic residue symbols and spins over Z[zeta12].")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("symbol", help="cubic residue symbol [A/B] of Eisenstein integers (a1,a2)")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_symbol)

    s = sub.add_parser("spin", help="spin of the ideal generated by ((r1,r2),(s1,s2))")
    s.add_argument("z")
    s.set_defaults(func=cmd_spin)

    def common(s, workers=True):
        s.add_argument("--format", choices=("csv", "json"), default="csv")
        s.add_argument("--out", default=None, help="write to this path instead of stdout")
        if workers:
            s.add_argument("--workers", type=parse_count, default=1)

    s = sub.add_parser("primes", help="prime ideals of norm <= xmax")
    s.add_argument("--xmax", type=parse_count, required=True)
    common(s)
    s.set_defaults(func=cmd_primes)

    s = sub.add_parser("sum", help="spin sums over prime ideals")
    s.add_argument("--xmax", type=parse_count, required=True)
    s.add_argument("--checkpoints", type=parse_list, default=None)
    common(s)
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("cube-prop", help="proportion of pi = r^2+s^2 with r a cube mod pi")
    s.add_argument("--xmax", type=parse_count, required=True)
    s.add_argument("--checkpoints", type=parse_list, default=None)
    common(s)
    s.set_defaults(func=cmd_cube_prop)

    s = sub.add_parser("lambda3", help="sum of spins over ideals of norm N")
    s.add_argument("n", type=parse_count, metavar="N")
    s.set_defaults(func=cmd_lambda3)

    s = sub.add_parser("poisson", help="truncated Poisson summation errors")
    s.add_argument("--qnorm", type=parse_count, required=True)
    s.add_argument("--K", type=lambda t: [float(v) for v in t.split(",")], default=[50.0, 100.0])
    s.add_argument("--H", type=parse_count, default=None, help="dual cutoff (default: the lemma's H with eps = 0.1)")
    s.add_argument("--seed", type=parse_count, default=DEFAULT_SEED)
    common(s, workers=False)
    s.set_defaults(func=cmd_poisson)

    s = sub.add_parser("pv", help="smoothed character sum scan")
    s.add_argument("--qnorm-max", type=parse_count, required=True)
    s.add_argument("--count", type=parse_count, default=100)
    s.add_argument("--seed", type=parse_count, default=DEFAULT_SEED)
    common(s, workers=False)
    s.set_defaults(func=cmd_pv)

    s = sub.add_parser("verify", help="seeded identity checks, one JSON report per suite")
    s.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    s.add_argument("--samples", type=parse_count, default=1000)
    s.add_argument("--norm-bound", type=parse_count, default=DEFAULT_NORM_BOUND)
    s.add_argument("--seed", type=parse_count, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "out", None):
            with open(args.out, "w", newline="") as fh:
                return args.func(args, fh)
        return args.func(args, out)
    except (ParseError, argparse.ArgumentTypeError, ValueError, ZeroDivisionError) as exc:
        print(f"cubicspin: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
