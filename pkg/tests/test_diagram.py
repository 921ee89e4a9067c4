from __future__ import annotations

import pytest

from hfk11.diagram import (
    BOTTOM,
    TOP,
    RasmussenParams,
    beta_cycle,
    decode,
    family_params,
    from_matchings,
    from_record,
    validate,
)
from hfk11.errors import DiagramError, ParameterError


def walk(d):
    """Independent traversal: follow beta as a permutation on (slot, side) ends."""
    partner = {}
    for a, b in d.bottom:
        partner[(a, "b")], partner[(b, "b")] = (b, "b"), (a, "b")
    for a, b in d.top:
        partner[(a, "t")], partner[(b, "t")] = (b, "t"), (a, "t")
    for b, t in d.through:
        partner[(b, "b")], partner[(t, "t")] = (t, "t"), (b, "b")
    order = []
    end = (1, "b")
    for _ in range(d.p):
        nxt = partner[end]
        order.append(nxt)
        end = (nxt[0], "t" if nxt[1] == "b" else "b")
        if end == (1, "b"):
            break
    return order


def test_family_params():
    assert family_params(0).as_tuple() == (31, 12, 6, 18)
    assert family_params(1).as_tuple() == (95, 36, 22, 50)
    assert family_params(2).as_tuple() == (159, 60, 38, 82)
    assert family_params(3).n == 3
    with pytest.raises(ParameterError):
        family_params(-1)


def test_family_has_zero_offset():
    for n in range(10):
        assert family_params(n).u == 0


def test_decode_unknot():
    d = decode(RasmussenParams(1, 0, 0, 0))
    assert d.bottom == () and d.top == ()
    assert d.through == ((1, 1),)
    assert (d.z.side, d.z.gap, d.w.side, d.w.gap) == (BOTTOM, 0, TOP, 0)


def test_decode_k0_rainbows():
    d = decode(family_params(0))
    assert d.bottom == tuple((j, 25 - j) for j in range(1, 13))
    assert set(d.top) == {(7 + j, 32 - j) for j in range(1, 13)}
    assert d.through == ((25, 7), (26, 1), (27, 2), (28, 3), (29, 4), (30, 5), (31, 6))
    assert d.z.gap == 12 and d.w.gap == 19


def test_decode_small():
    d = decode(RasmussenParams(5, 2, 0, 4))
    assert d.bottom == ((1, 4), (2, 3))
    assert d.top == ((2, 5), (3, 4))
    assert d.through == ((5, 1),)


@pytest.mark.parametrize("bad", [(31, 12, 6, 17), (31, 16, 0, 32), (4, 2, 0, 4), (0, 0, 0, 0)])
def test_decode_rejects_out_of_range(bad):
    with pytest.raises(ParameterError):
        decode(RasmussenParams(*bad))


def test_validate_family_up_to_50():
    for n in range(51):
        rep = validate(decode(family_params(n)))
        assert rep.ok
        assert rep.cycle_length == 64 * n + 31
        assert rep.algebraic_intersection == 1


def test_validate_unknot_and_small():
    assert validate(decode(RasmussenParams(1, 0, 0, 0))).ok
    rep = validate(decode(RasmussenParams(5, 2, 0, 4)))
    assert (rep.ok, rep.cycle_length, rep.algebraic_intersection) == (True, 5, 1)


def test_beta_cycle_orders():
    assert [s for s, _ in beta_cycle(decode(RasmussenParams(1, 0, 0, 0)))] == [1]
    assert [s for s, _ in beta_cycle(decode(RasmussenParams(5, 2, 0, 4)))] == [1, 4, 3, 2, 5]
    k0 = [s for s, _ in beta_cycle(decode(family_params(0)))]
    assert k0 == [1, 24, 15, 10, 29, 4, 21, 18, 7, 25, 14, 11, 28, 3, 22, 17, 8, 31, 6,
                  19, 20, 5, 30, 9, 16, 23, 2, 27, 12, 13, 26]


def test_beta_cycle_matches_independent_walk():
    for params in [family_params(0), family_params(1), RasmussenParams(5, 2, 0, 4)]:
        d = decode(params)
        mine = [s for s, _ in beta_cycle(d)]
        other = [s for s, _ in walk(d)]
        # the independent walk starts after x_1; rotate it to start at x_1
        k = other.index(1)
        assert mine == other[k:] + other[:k]


def test_signed_count_from_sides():
    d = decode(family_params(0))
    sides = [side for _, side in beta_cycle(d)]
    assert sides.count(TOP) - sides.count(BOTTOM) == 1


def test_from_matchings_round_trip():
    d = decode(family_params(0))
    again = from_matchings(d.bottom, d.top, d.through, d.z.gap, d.w.gap)
    assert again == d
    assert from_matchings(d.bottom, d.top, d.through) == d  # anchors inferred
    assert from_record(d.to_record()) == d


def test_from_matchings_zero_intersection():
    with pytest.raises(DiagramError) as exc:
        from_matchings([(1, 2)], [(1, 2)], [], p=2)
    assert exc.value.code == "validity"


def test_validate_reports_without_raising():
    base = decode(RasmussenParams(1, 0, 0, 0))
    bad = type(base)(2, ((1, 2),), ((1, 2),), (), base.z, base.w)
    rep = validate(bad)
    assert not rep.ok and rep.algebraic_intersection == 0 and rep.cycle_length == 2
    assert "algebraic-intersection" in rep.failures


def test_from_matchings_interleaved():
    with pytest.raises(DiagramError) as exc:
        from_matchings([(1, 3), (2, 4)], [(1, 2), (3, 4)], [(5, 5)], p=5)
    assert exc.value.code == "crossing-arcs"


def test_from_matchings_coverage():
    with pytest.raises(DiagramError) as exc:
        from_matchings([(1, 2)], [(1, 2)], [(3, 4)], p=4)
    assert exc.value.code == "coverage"


def test_decode_deterministic():
    assert decode(family_params(2)) == decode(family_params(2))


def test_rainbows_nested_or_disjoint():
    for n in range(4):
        d = decode(family_params(n))
        for side, pairs in ((BOTTOM, d.bottom), (TOP, d.top)):
            spans = [d.arc_span(pr, side) for pr in pairs]
            for a, b in spans:
                for c, e in spans:
                    assert (a <= c and e <= b) or (c <= a and b <= e) or b < c or e < a
