"""Command-line front end.

Subcommands::

    vmeasure expect   SPEC --level K            conditional expectation as a spec
    vmeasure norms    SPEC                      variation and semivariation certificates
    vmeasure converge SPEC [--levels 0..N] [--norms ...]
    vmeasure pettis   SPEC [--levels 0..N]
    vmeasure example7 --levelN N [--max-n n]
    vmeasure diameter SPEC [--strategy exhaustive|sampled] [--count C]

Spec errors exit with status 1; bad flags with status 2.  Divergent sweeps
are results, not errors, and exit 0.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from ._numbers import json_number
from .exceptions import DomainError, ResourceError
from .gallery import (
    EXAMPLE7_MAX_LEVEL,
    example7_gap,
    example7_measure,
    nonconvergence_witness,
    range_diameter,
)
from .martingale import NORM_SELECTORS, convergence_sweep, martingale_function, pettis_sweep
from .measure import conditional_expectation
from .norms import DEFAULT_ENUM_CAP, operator_semivariation, scalar_semivariation, variation
from .space import dyadic_chain, dyadic_partition, finest_partition, trivial_partition
from .specio import MeasureSpec, SpecError, emit_spec, load_spec, spec_from_measure

EXAMPLE7_HEADER = ("n", "k", "gap", "witness", "nonconvergence_witness")


class UsageError(Exception):
    pass


def _parse_levels(text: str | None, spec: MeasureSpec) -> list[int] | None:
    if text is None:
        return None
    if spec.dyadic_level is None:
        raise UsageError("--levels needs a dyadic space")
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            levels = list(range(int(lo), int(hi) + 1))
        else:
            levels = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --levels {text!r} (use A..B or a comma list)") from None
    if not levels or any(not 0 <= k <= spec.dyadic_level for k in levels):
        raise UsageError(f"--levels must lie in 0..{spec.dyadic_level}")
    return levels


def cmd_expect(args) -> str:
    spec = load_spec(args.spec)
    if spec.dyadic_level is None:
        raise UsageError("expect needs a dyadic space")
    if not 0 <= args.level <= spec.dyadic_level:
        raise UsageError(f"--level must lie in 0..{spec.dyadic_level}")
    m, mu = spec.build()
    m_pi = conditional_expectation(m, mu, dyadic_partition(m.alg, args.level))
    return emit_spec(spec_from_measure(m_pi, mu))


def norms_report(spec: MeasureSpec, enum_cap: int = DEFAULT_ENUM_CAP, seed: int = 0) -> dict:
    m, _ = spec.build()
    kw = dict(enum_cap=enum_cap, seed=seed)
    scalar = scalar_semivariation(m, **kw) if m.p == 1 else None
    return {
        "variation": json_number(variation(m)),
        "scalar_semivariation": None if scalar is None else scalar.to_dict(),
        "operator_semivariation": (scalar if scalar is not None else operator_semivariation(m, **kw)).to_dict(),
    }


def cmd_norms(args) -> str:
    return json.dumps(norms_report(load_spec(args.spec), args.enum_cap, args.seed), indent=2) + "\n"


def _report_text(report, fmt: str) -> str:
    return report.to_json() + "\n" if fmt == "json" else report.to_csv()


def _chain(spec: MeasureSpec, alg, levels):
    """Dyadic ladder (default 0..N); for plain spaces the pair {Omega} -> atoms."""
    if spec.dyadic_level is None:
        return [trivial_partition(alg), finest_partition(alg)], [0, 1]
    labels = levels or list(range(spec.dyadic_level + 1))
    return dyadic_chain(alg, labels), labels


def cmd_converge(args) -> str:
    spec = load_spec(args.spec)
    levels = _parse_levels(args.levels, spec)
    norms = [t.strip() for t in args.norms.split(",") if t.strip()]
    bad = [t for t in norms if t not in NORM_SELECTORS]
    if bad:
        raise UsageError(f"unknown --norms entries {bad}; choose from {', '.join(NORM_SELECTORS)}")
    m, mu = spec.build()
    chain, labels = _chain(spec, m.alg, levels)
    report = convergence_sweep(m, mu, chain, norms, labels, enum_cap=args.enum_cap,
                               seed=args.seed, measure_id=args.spec)
    return _report_text(report, args.format)


def cmd_pettis(args) -> str:
    spec = load_spec(args.spec)
    levels = _parse_levels(args.levels, spec)
    m, mu = spec.build()
    if m.p != 1:
        raise UsageError("pettis needs an X-valued spec (dims.p == 1)")
    f = spec.density_function(m.alg)
    if f is None:
        # density of the mu-continuous part
        f = martingale_function(m, mu, finest_partition(m.alg))
    chain, labels = _chain(spec, m.alg, levels)
    report = pettis_sweep(f, mu, chain, labels, enum_cap=args.enum_cap, seed=args.seed,
                          measure_id=args.spec)
    return _report_text(report, args.format)


def example7_rows(N: int, max_n: int | None = None) -> list[tuple]:
    """Rows ``(n, k, gap, witness, nonconvergence)`` for ``1 <= k < n <= max_n``.

    The non-convergence witness needs ``n < N`` and is ``None`` at ``n == N``.
    """
    max_n = N if max_n is None else max_n
    m = example7_measure(N)
    rows = []
    for n in range(2, max_n + 1):
        nc = nonconvergence_witness(N, n, m) if n < N else None
        for k in range(1, n):
            gap, witness = example7_gap(n, k, N, m)
            rows.append((n, k, gap, witness, nc))
    return rows


def cmd_example7(args) -> str:
    N = args.levelN
    if not 1 <= N <= EXAMPLE7_MAX_LEVEL:
        raise UsageError(f"--levelN must lie in 1..{EXAMPLE7_MAX_LEVEL}")
    max_n = N if args.max_n is None else args.max_n
    if not 1 <= max_n <= N:
        raise UsageError(f"--max-n must lie in 1..{N}")
    rows = example7_rows(N, max_n)
    if args.format == "json":
        out = [dict(zip(EXAMPLE7_HEADER, (n, k, str(g), str(w), None if c is None else str(c))))
               for n, k, g, w, c in rows]
        return json.dumps({"levelN": N, "rows": out}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EXAMPLE7_HEADER)
    for n, k, g, w, c in rows:
        writer.writerow([n, k, g, w, "" if c is None else c])
    return buf.getvalue()


def cmd_diameter(args) -> str:
    spec = load_spec(args.spec)
    m, _ = spec.build()
    value = range_diameter(m, args.strategy, count=args.count, seed=args.seed)
    return json.dumps({"strategy": args.strategy, "diameter": json_number(value)}, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vmeasure", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True, fmt=None):
        if spec:
            p.add_argument("spec", help="measure-spec JSON file")
        p.add_argument("--seed", type=int, default=0, help="RNG seed for sampled strategies (default 0)")
        p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP,
                       help="max evaluations for exact enumeration (default 2**20)")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default=fmt)

    p = sub.add_parser("expect", help="conditional expectation m_pi at a dyadic level")
    common(p)
    p.add_argument("--level", "-k", type=int, required=True)
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("norms", help="variation, scalar and operator semivariation")
    common(p)
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("converge", help="distances between m_pi and m along the dyadic ladder")
    common(p, fmt="csv")
    p.add_argument("--levels", help="A..B or comma list (default 0..N)")
    p.add_argument("--norms", default=",".join(NORM_SELECTORS),
                   help="comma list from variation,scalar,operator,pettis")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("pettis", help="Pettis distances of the martingale f_pi to the density")
    common(p, fmt="csv")
    p.add_argument("--levels", help="A..B or comma list (default 0..N)")
    p.set_defaults(func=cmd_pettis)

    p = sub.add_parser("example7", help="Rademacher gaps and non-convergence witnesses")
    common(p, spec=False, fmt="csv")
    p.add_argument("--levelN", type=int, required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_example7)

    p = sub.add_parser("diameter", help="range diameter sup ||m(A) - m(B)||")
    common(p)
    p.add_argument("--strategy", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--count", type=int, default=1000)
    p.set_defaults(func=cmd_diameter)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (SpecError, DomainError, ResourceError) as exc:
        print(f"vmeasure {args.command}: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
