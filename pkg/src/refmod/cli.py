"""Command-line front end.

Subcommands: gamma0, char, disc, weil, eta, dims, reflective, selftest.
Output is a JSON envelope (command echo, version, parameters, results,
timing) or TSV where noted; orderings are canonical so diffs against
golden files are stable.  Exit codes: 0 success, 2 precondition violation,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__

USAGE_EXIT = 64
PRECONDITION_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_EXIT)


def _envelope(command: str, params: dict, results, t0: float) -> str:
    params = {
        k: v
        for k, v in params.items()
        if k != "func" and isinstance(v, (int, str, float, bool, type(None)))
    }
    return json.dumps(
        {
            "command": command,
            "version": __version__,
            "parameters": params,
            "results": results,
            "seconds": round(time.time() - t0, 4),
        },
        indent=1,
        sort_keys=True,
    )


def _cmd_gamma0(args) -> int:
    from .gamma0 import gamma0_data

    t0 = time.time()
    data = gamma0_data(args.N)
    cusps = [
        {"cusp": c.label(), "a": c.a, "c": c.c, "width": c.width,
         "invariants": list(c.invariants)}
        for c in data.cusps
    ]
    if args.format == "tsv":
        print(f"{data.N}\t{data.index}\t{data.nu2}\t{data.nu3}\t{data.nu_inf}\t{data.genus}")
        for c in cusps:
            print(f"{c['cusp']}\t{c['width']}")
        return 0
    results = {
        "index": data.index,
        "nu2": data.nu2,
        "nu3": data.nu3,
        "nu_inf": data.nu_inf,
        "genus": data.genus,
        "cusps": cusps,
    }
    print(_envelope("gamma0 info", {"N": args.N}, results, t0))
    return 0


def _cmd_char(args) -> int:
    from .characters import CharacterSpec, char_eval
    from .gamma0 import MetaplecticElement

    t0 = time.time()
    parts = [int(x) for x in args.matrix.split(",")]
    if len(parts) == 4:
        a, b, c, d = parts
        branch = 1
    elif len(parts) == 5:
        a, b, c, d, branch = parts
    else:
        raise ValueError("matrix must be a,b,c,d or a,b,c,d,branch")
    spec = CharacterSpec(args.level, args.theta, args.quad)
    val = char_eval(spec, MetaplecticElement(a, b, c, d, branch))
    results = {"value_exponent": str(val.exponent), "value": f"e({val.exponent})"}
    print(_envelope("char eval", vars(args), results, t0))
    return 0


def _cmd_disc(args) -> int:
    from .discforms import enumerate_symbols

    t0 = time.time()
    syms = enumerate_symbols(args.level, args.max_order, args.sign)
    results = [
        {"symbol": str(s), "order": s.order(), "level": s.level(), "signature": s.signature()}
        for s in syms
    ]
    print(_envelope("disc enumerate", vars(args), results, t0))
    return 0


def _cmd_weil(args) -> int:
    import random

    from .discforms import parse_genus_symbol, realize_group
    from .gamma0 import MetaplecticElement
    from .weil import WeilContext

    t0 = time.time()
    sym = parse_genus_symbol(args.symbol)
    group = realize_group(sym)
    if group.order > args.budget:
        raise ValueError(f"|A| = {group.order} exceeds the budget {args.budget}")
    ctx = WeilContext(group, sym)
    rng = random.Random(args.seed)
    N = args.ambient or ctx.level
    results = {
        "symbol": str(sym),
        "order": ctx.nA,
        "level": ctx.level,
        "signature": ctx.signature,
        "orthogonality": ctx.check_orthogonality(),
        "S_squared": ctx.check_S_squared(),
        "ST_cubed": ctx.check_ST_cubed(),
    }
    ok = True
    from math import gcd

    for _ in range(args.samples):
        while True:
            a = rng.randrange(1, 6 * N)
            if gcd(a, N) != 1:
                continue
            bp, cp = rng.randrange(-3, 4), rng.randrange(-3, 4)
            num = 1 + N * N * bp * cp
            if num % a == 0 and abs(bp) + abs(cp):
                g = MetaplecticElement(a, N * bp, N * cp, num // a)
                break
        sample = [ctx.elements[rng.randrange(ctx.nA)] for _ in range(min(4, ctx.nA))]
        ok = ok and ctx.scalar_permutation_check(g, N, sample)
    results["scalar_permutation"] = ok
    supp_ok = True
    for _ in range(args.samples):
        c = rng.randrange(0, 2 * N)
        supp = ctx.support_e0(c if c else N, N, m=rng.randrange(-3, 4))
        coset = set(group.twisted_coset(gcd(c if c else N, N)))
        supp_ok = supp_ok and supp <= coset
    results["support_containment"] = supp_ok
    print(_envelope("weil check", vars(args), results, t0))
    return 0 if all(v for k, v in results.items() if isinstance(v, bool)) else 1


def _cmd_eta(args) -> int:
    t0 = time.time()
    if args.eta_command == "classify":
        from .etaq import classify_bounded

        quotients = classify_bounded(
            args.N, Fraction(args.max_order), require_holomorphic=not args.allow_poles
        )
        results = [
            {
                "exponents": {str(d): r for d, r in q.exponent_key()},
                "weight": str(q.weight),
                "orders": {lbl: str(v) for lbl, v in sorted(q.orders().items())},
            }
            for q in quotients
        ]
        print(_envelope("eta classify", vars(args), results, t0))
        return 0
    from .etaq import EtaQuotient, parse_exponents

    q = EtaQuotient(args.level, parse_exponents(args.exponents))
    if not q.admissible():
        raise ValueError("eta quotient is not admissible at this level")
    prec = Fraction(args.prec) if args.prec else None
    if args.at == "zero":
        tr = q.expand_at_zero(prec)
        results = {
            "tau_power": str(tr.tau_power),
            "constant": repr(tr.constant),
            "series": json.loads(tr.series.to_json()),
        }
    else:
        results = {"series": json.loads(q.expand(prec).to_json())}
    results["weight"] = str(q.weight)
    results["character"] = repr(q.character())
    results["orders"] = {lbl: str(v) for lbl, v in sorted(q.orders().items())}
    print(_envelope("eta expand", vars(args), results, t0))
    return 0


def _cmd_dims(args) -> int:
    from .characters import CharacterSpec
    from .dims import cusp_any_weight, dim_any_weight

    t0 = time.time()
    spec = CharacterSpec(args.level, args.theta, args.quad)
    k = Fraction(args.weight)
    fn = cusp_any_weight if args.cusp_forms else dim_any_weight
    dim = fn(args.level, k, spec)
    results = {"dimension": dim, "decided": dim is not None}
    print(_envelope("dims", vars(args), results, t0))
    return 0


def _cmd_reflective(args) -> int:
    from .reflective import reports_to_json, search

    t0 = time.time()
    reports = search(args.level, args.sig_min, args.sig_max, args.max_order, args.budget)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(reports_to_json(reports))
    if args.format == "tsv":
        print("symbol\tsignature\tweight\tslots\tobstruction\tverdict")
        for r in reports:
            print(
                f"{r.symbol}\t{r.signature}\t{r.weight}\t{r.slot_count}\t"
                f"{r.obstruction if r.obstruction is not None else 'undecided'}\t{r.verdict}"
            )
    else:
        print(_envelope("reflective search", {k: v for k, v in vars(args).items() if k != "func"},
                        [r.to_dict() for r in reports], t0))
    return 0


def _cmd_selftest(args) -> int:
    from . import tables
    from .etaq import EtaQuotient
    from .gamma0 import cusp_representatives, gamma0_data

    failures = 0

    def report(name: str, ok: bool):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    for N, index, nu2, nu3, nu_inf, genus in tables.gamma0_rows():
        d = gamma0_data(N)
        report(
            f"group data N={N}",
            (d.index, d.nu2, d.nu3, d.nu_inf, d.genus) == (index, nu2, nu3, nu_inf, genus),
        )
    by_level: dict[int, dict[str, int]] = {}
    for N, label, width in tables.cusp_rows():
        by_level.setdefault(N, {})[label] = width
    for N, widths in by_level.items():
        got = {c.label(): c.width for c in cusp_representatives(N)}
        report(f"cusps N={N}", got == widths)
    for row in tables.eta_rows():
        q = EtaQuotient(row.N, row.exponents)
        ok = q.admissible() and q.weight == row.weight
        orders = {c.label(): q.order_at_cusp(c.c) for c in cusp_representatives(row.N)}
        for label, zero in zip(row.cusps, row.zeros):
            ok = ok and orders.get(label) == zero
        for label, order in orders.items():
            if label not in row.cusps:
                ok = ok and order == 0
        if row.character is not None:
            from .characters import spec_equal

            ok = ok and spec_equal(q.character(), row.character)
        report(f"eta row N={row.N} {row.cusps}", ok)

    from .exactnum import quadratic_character
    from .qseries import (
        delta_series,
        eisenstein_chi,
        eisenstein_level1,
        eisenstein_weight1,
        eta_series,
        lattice_theta,
    )

    chi3 = quadratic_character(-3, 3)
    report(
        "identity: weight-1 Eisenstein = hexagonal theta",
        eisenstein_weight1(chi3, 20).agrees_with(lattice_theta([[2, 1], [1, 2]], 20), 20),
    )
    report(
        "identity: weight-3 Eisenstein = eta quotient 1^-3 3^9",
        eisenstein_chi(3, chi3, 20).agrees_with(
            eta_series(1, 24) ** -3 * eta_series(3, 24) ** 9, 20
        ),
    )
    e2 = eisenstein_level1(2, 20)
    d4 = [[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -1, 2]]
    report(
        "identity: -E2(t) + 2 E2(2t) = theta(D4)",
        (-e2 + e2.scale_exponents(2) * 2).agrees_with(lattice_theta(d4, 20), 20),
    )
    inv = delta_series(20).inverse()
    report(
        "identity: 1/delta = q^-1 + 24 + 324 q + ...",
        inv.coefficient(-1) == 1 and inv.coefficient(0) == 24 and inv.coefficient(1) == 324,
    )
    print(f"{'OK' if not failures else 'FAILED'}: {failures} failures")
    return 0 if not failures else 1


def build_parser() -> _Parser:
    p = _Parser(prog="refmod", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma0", help="group data for Gamma_0(N)")
    gsub = g.add_subparsers(dest="gamma0_command", required=True)
    gi = gsub.add_parser("info")
    gi.add_argument("N", type=int)
    gi.add_argument("--format", choices=("json", "tsv"), default="json")
    gi.set_defaults(func=_cmd_gamma0)

    c = sub.add_parser("char", help="evaluate a character")
    csub = c.add_subparsers(dest="char_command", required=True)
    ce = csub.add_parser("eval")
    ce.add_argument("--level", type=int, required=True)
    ce.add_argument("--theta", type=int, default=0)
    ce.add_argument("--quad", type=int, default=1)
    ce.add_argument("--matrix", required=True)
    ce.set_defaults(func=_cmd_char)

    d = sub.add_parser("disc", help="genus symbols")
    dsub = d.add_subparsers(dest="disc_command", required=True)
    de = dsub.add_parser("enumerate")
    de.add_argument("--level", type=int, required=True)
    de.add_argument("--max-order", type=int, required=True)
    de.add_argument("--sign", type=int, default=None)
    de.set_defaults(func=_cmd_disc)

    w = sub.add_parser("weil", help="Weil representation checks")
    wsub = w.add_subparsers(dest="weil_command", required=True)
    wc = wsub.add_parser("check")
    wc.add_argument("--symbol", required=True)
    wc.add_argument("--budget", type=int, default=1000000)
    wc.add_argument("--ambient", type=int, default=None)
    wc.add_argument("--samples", type=int, default=5)
    wc.add_argument("--seed", type=int, default=0)
    wc.set_defaults(func=_cmd_weil)

    e = sub.add_parser("eta", help="eta quotients")
    esub = e.add_subparsers(dest="eta_command", required=True)
    ec = esub.add_parser("classify")
    ec.add_argument("N", type=int)
    ec.add_argument("--max-order", default="1")
    ec.add_argument("--allow-poles", action="store_true")
    ec.set_defaults(func=_cmd_eta)
    ee = esub.add_parser("expand")
    ee.add_argument("--level", type=int, required=True)
    ee.add_argument("--exponents", required=True)
    ee.add_argument("--at", choices=("infinity", "zero"), default="infinity")
    ee.add_argument("--prec", default=None)
    ee.set_defaults(func=_cmd_eta)

    m = sub.add_parser("dims", help="dimension formulas")
    m.add_argument("--level", type=int, required=True)
    m.add_argument("--weight", required=True)
    m.add_argument("--theta", type=int, default=0)
    m.add_argument("--quad", type=int, default=1)
    m.add_argument("--cusp-forms", action="store_true")
    m.set_defaults(func=_cmd_dims)

    r = sub.add_parser("reflective", help="reflective-form search")
    rsub = r.add_subparsers(dest="reflective_command", required=True)
    rs = rsub.add_parser("search")
    rs.add_argument("--level", type=int, required=True)
    rs.add_argument("--sig-min", type=int, required=True)
    rs.add_argument("--sig-max", type=int, required=True)
    rs.add_argument("--max-order", type=int, default=None)
    rs.add_argument("--budget", type=int, default=1000000)
    rs.add_argument("--out", default=None)
    rs.add_argument("--format", choices=("json", "tsv"), default="json")
    rs.set_defaults(func=_cmd_reflective)

    st = sub.add_parser("selftest", help="compare against the golden tables")
    st.set_defaults(func=_cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return PRECONDITION_EXIT


if __name__ == "__main__":
    sys.exit(main())
