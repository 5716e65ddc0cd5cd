from fractions import Fraction as F
import pytest

from refmod.characters import CharacterSpec
from refmod.discforms import GenusSymbol, enumerate_symbols, parse_genus_symbol, realize_group
from refmod.gamma0 import gamma0_data
from refmod.reflective import (
    allowed_exponents,
    existence_bound,
    reflective_orders,
    search,
)


def test_allowed_exponents_examples():
    assert allowed_exponents(1, CharacterSpec(1), 1, 0) == (0, 1)
    # level 4, theta character, cusp 1/2: offset 1/4, width 1
    nu, h = allowed_exponents(4, CharacterSpec(4, 1, 1), 1, 2)
    assert (nu, h) == (F(1, 4), 1)
    nu, h = allowed_exponents(2, CharacterSpec(2), 0, 1)
    assert (nu, h) == (0, 2)


def test_reflective_orders_paper_cases():
    A3 = realize_group(parse_genus_symbol("3^{-1}"))
    assert reflective_orders(A3, 3, 0, 1) == {1, 3}
    assert reflective_orders(A3, 3, 1, 3) == {1}
    A5p = realize_group(parse_genus_symbol("5^{+1}"))
    assert reflective_orders(A5p, 5, 0, 1) == {1, 4, 5}
    trivial = realize_group(GenusSymbol())
    assert reflective_orders(trivial, 1, 1, 0) == {1}
    # level-4 exponent-2 forms: orders 1 and 2 at the cusp 0, order 4 when no
    # nonzero norm-0 vectors exist, and order 3 only vacuously (its matching
    # norm class 1/2 is empty for even-type forms)
    A22m = realize_group(parse_genus_symbol("2^{-2}"))
    orders = reflective_orders(A22m, 4, 0, 1)
    assert {1, 2} <= orders
    assert (4 in orders) == all(
        A22m.norm(x) != 0 for x in A22m.elements() if x != (0, 0)
    )
    assert (3 in orders) == all(A22m.norm(x) != F(1, 2) for x in A22m.elements())
    # with norm-1/2 elements present (odd-type part), order 3 is excluded
    A_odd = realize_group(parse_genus_symbol("2^{+2}_2"))
    assert any(A_odd.norm(x) == F(1, 2) for x in A_odd.elements())
    assert 3 not in reflective_orders(A_odd, 4, 0, 1)


def test_fast_path_agrees_with_norm_check():
    for sym in enumerate_symbols(None, 40):
        A = realize_group(sym)
        N = A.level() if A.level() > 1 else 1
        for cusp in gamma0_data(N).cusps:
            fast = reflective_orders(A, N, cusp.a, cusp.c, hall_fast_path=True)
            slow = reflective_orders(A, N, cusp.a, cusp.c, hall_fast_path=False)
            assert fast == slow, (str(sym), cusp)


def test_fast_path_agrees_at_ambient_levels():
    # every symbol of level exactly N for N <= 30, checked at every cusp
    for N in range(2, 31):
        for sym in enumerate_symbols(N, 64):
            if sym.level() != N:
                continue
            A = realize_group(sym)
            for cusp in gamma0_data(N).cusps:
                fast = reflective_orders(A, N, cusp.a, cusp.c, hall_fast_path=True)
                slow = reflective_orders(A, N, cusp.a, cusp.c, hall_fast_path=False)
                assert fast == slow, (N, str(sym), cusp)


def test_slots_equal_on_equivalent_cusps():
    # cusps with the same invariants get the same reflective orders
    sym = parse_genus_symbol("9^{-1}")
    A = realize_group(sym)
    assert reflective_orders(A, 18, 1, 3) == reflective_orders(A, 18, 2, 3)
    assert reflective_orders(A, 18, 1, 6) == reflective_orders(A, 18, 5, 6)


def test_example_nine_two():
    rep = existence_bound(parse_genus_symbol("3^{-1}"), -14)
    assert rep.slot_count == 3
    by_label = {s.cusp_label: s.orders for s in rep.slots}
    assert by_label["oo"] == (1,)
    assert by_label["1/1"] == (1, 3)
    assert rep.obstruction == 2
    assert rep.verdict == "guaranteed"
    assert rep.weight == -7


def test_existence_bound_validation():
    with pytest.raises(ValueError):
        existence_bound(parse_genus_symbol("3^{-1}"), -13)  # signature mismatch
    with pytest.raises(ValueError):
        existence_bound(parse_genus_symbol("3^{-1}"), -14, ambient_level=4)


def test_search_level_one():
    reports = {r.signature: r for r in search(1, -32, 0)}
    assert reports[-8].verdict == "guaranteed"
    assert reports[-16].verdict == "guaranteed"
    assert reports[-24].verdict == "guaranteed"
    assert reports[-32].verdict == "undecided"
    assert reports[0].verdict == "undecided"
    assert "degenerate" in reports[0].notes
    assert reports[-24].slot_count == 1 and reports[-24].obstruction == 0
    assert reports[-32].obstruction == 1


def test_search_level_five():
    reports = search(5, -8, -8, 25)
    verdicts = {str(r.symbol): r.verdict for r in reports}
    assert verdicts["5^{-1}"] == "guaranteed"


def test_search_level_23():
    reports = search(23, -2, 0, 23)
    sym_reports = [r for r in reports if str(r.symbol) == "23^{-1}"]
    assert len(sym_reports) == 1 and sym_reports[0].verdict == "guaranteed"
    assert sym_reports[0].signature == -2


def test_verdict_monotone_in_max_order():
    # larger symbol budget never removes reports or slots
    small = {(str(r.symbol), r.signature): r.slot_count for r in search(5, -8, -8, 5)}
    large = {(str(r.symbol), r.signature): r.slot_count for r in search(5, -8, -8, 25)}
    for key, slots in small.items():
        assert large[key] == slots


def test_allowed_exponent_lattice_vs_eta_orders():
    # every admissible eta quotient's cusp order sits in the advertised lattice
    from refmod.etaq import EtaQuotient
    from refmod import tables

    for row in tables.eta_rows():
        if row.N > 16:
            continue
        q = EtaQuotient(row.N, row.exponents)
        spec = q.character()
        for cusp in gamma0_data(row.N).cusps:
            nu, h = allowed_exponents(row.N, spec, cusp.a, cusp.c)
            assert (q.order_at_cusp(cusp.c) - nu) % 1 == 0


def test_report_json_roundtrip():
    import json

    from refmod.reflective import reports_to_json

    reports = search(3, -14, -14, 9)
    data = json.loads(reports_to_json(reports))
    assert any(d["symbol"] == "3^{-1}" and d["verdict"] == "guaranteed" for d in data)
    for d in data:
        assert set(d) >= {"symbol", "signature", "weight", "slots", "slot_count",
                          "obstruction_dim", "verdict", "realizability"}
