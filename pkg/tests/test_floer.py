from __future__ import annotations

from collections import Counter

import pytest

from hfk11.diagram import RasmussenParams, decode, family_params
from hfk11.errors import WindowInstabilityError
from hfk11.floer import (
    MODES,
    audit_bigon,
    audit_ok,
    differential,
    enumerate_bigons,
    required_window,
)
from hfk11.geometry import realize

from k0_tables import CFK_K0, HAT_S3_K0


@pytest.fixture(scope="module")
def k0_bigons():
    real = realize(decode(family_params(0)))
    return real, enumerate_bigons(real)


def keys(bigons):
    return Counter(b.key for b in bigons)


def test_k0_named_disks(k0_bigons):
    _, bigons = k0_bigons
    k = keys(bigons)
    assert k[(12, 13, 0, 1)] == 1
    assert k[(31, 25, 0, 2)] == 1
    assert k[(1, 7, 2, 0)] == 1


def test_k0_no_basepoint_free_disk(k0_bigons):
    _, bigons = k0_bigons
    assert not [b for b in bigons if b.n_w == 0 and b.n_z == 0]


def test_unknot_has_no_bigons():
    assert enumerate_bigons(realize(decode(RasmussenParams(1, 0, 0, 0)))) == ()


def test_full_table_matches_transcription(k0_bigons):
    _, bigons = k0_bigons
    rows = differential(bigons, "full", 31).rows()
    for k, (_, terms) in CFK_K0.items():
        assert sorted(rows.get(k, [])) == sorted(terms), f"row x_{k}"


def test_full_row_x4(k0_bigons):
    _, bigons = k0_bigons
    assert differential(bigons, "full", 31).rows()[4] == [(7, 1, 0), (21, 0, 1)]


def test_hat_s3_table_matches_transcription(k0_bigons):
    _, bigons = k0_bigons
    hat = differential(bigons, "hat-s3", 31)
    for k, targets in HAT_S3_K0.items():
        assert hat.row(k) == sorted(targets), f"row x_{k}"
    assert hat.row(9) == [10, 16] and hat.row(14) == [] and hat.row(30) == [23, 29]


def test_hat_knot_is_zero(k0_bigons):
    _, bigons = k0_bigons
    assert differential(bigons, "hat-knot", 31).entries == ()


def test_modes_are_nested(k0_bigons):
    _, bigons = k0_bigons
    pairs = [differential(bigons, m, 31).pairs() for m in MODES]
    assert pairs[0] <= pairs[1] <= pairs[2]


@pytest.mark.parametrize("n", [0, 1])
def test_d_squared_family(n):
    real = realize(decode(family_params(n)))
    bigons = enumerate_bigons(real)
    for mode in MODES:
        assert differential(bigons, mode, real.p).square_is_zero()


def test_every_witness_passes_audit(k0_bigons):
    real, bigons = k0_bigons
    for b in bigons:
        verdict = audit_bigon(b, real)
        assert verdict["convex"] and verdict["positive"] and verdict["index-one"]
        assert verdict["multiplicities"] and verdict["embedded"]


def test_immersed_bigons_are_counted():
    # here beta crosses the alpha edge of two disks; without them d^2 != 0
    real = realize(decode(RasmussenParams(25, 9, 5, 17)))
    bigons = enumerate_bigons(real)
    immersed = [b for b in bigons if not audit_bigon(b, real)["embedded"]]
    assert sorted(b.key for b in immersed) == [(25, 6, 1, 1), (25, 19, 1, 1)]
    assert all(audit_ok(b, real) for b in bigons)
    assert differential(bigons, "full", 25).square_is_zero()
    without = [b for b in bigons if b not in immersed]
    assert not differential(without, "full", 25).square_is_zero()


def test_no_duplicate_witnesses(k0_bigons):
    _, bigons = k0_bigons
    seen = set()
    for b in bigons:
        assert b.witness.beta not in seen
        seen.add(b.witness.beta)
        # FROM corner normalised into the first period
        x0 = b.witness.beta[0][0]
        assert 0 <= x0 < 31 * b.witness.scale[0]


def test_window_stability_and_instability():
    real = realize(decode(RasmussenParams(13, 1, 1, 7)))
    need = required_window(real)
    assert need > 4
    with pytest.raises(WindowInstabilityError):
        enumerate_bigons(real, window=need - 2)
    auto = enumerate_bigons(real)
    assert keys(auto) == keys(enumerate_bigons(real, window=need + 2, check_stability=False))


def test_window_too_small_rejected():
    real = realize(decode(family_params(0)))
    with pytest.raises(ValueError):
        enumerate_bigons(real, window=1)


def test_witness_polygon_is_counterclockwise(k0_bigons):
    _, bigons = k0_bigons
    for b in bigons[:10]:
        poly = b.witness.polygon()
        area = sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]))
        assert area > 0
