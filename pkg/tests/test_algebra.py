from __future__ import annotations

import random

import pytest

from hfk11.algebra import (
    F2ChainComplex,
    cycles,
    filtered_sublevel,
    homology_dims,
    is_boundary,
    kernel,
    rank,
    total_homology,
)
from hfk11.errors import ConsistencyError, NotACycleError
from hfk11.gradings import hat_s3_complex


def make(boundary, filtration=None):
    gens = tuple(sorted(boundary))
    return F2ChainComplex(gens, {g: frozenset(v) for g, v in boundary.items()}, filtration)


@pytest.fixture(scope="module")
def k0_hat(request):
    from conftest import family_result

    res = family_result(0)
    graded = {g.index: (g.alexander, g.maslov) for g in res.report.gradings}
    return hat_s3_complex(res.report.differentials["hat-s3"], graded), graded


def test_zero_boundary_counts_generators():
    c = make({i: () for i in range(1, 32)})
    labels = {i: i % 3 for i in range(1, 32)}
    assert homology_dims(c, labels) == {0: 10, 1: 11, 2: 10}


def test_two_generators_cancel():
    c = make({"a": {"b"}, "b": ()})
    assert homology_dims(c, {"a": 1, "b": 0}) == {}
    assert total_homology(c) == 0


def test_d_squared_enforced():
    with pytest.raises(ConsistencyError) as exc:
        make({"a": {"b"}, "b": {"c"}, "c": ()})
    assert exc.value.invariant == "d-squared"


def test_filtration_enforced():
    with pytest.raises(ConsistencyError):
        make({"a": {"b"}, "b": ()}, {"a": 0, "b": 1})


def test_label_violation():
    c = make({"a": {"b"}, "b": ()})
    with pytest.raises(ConsistencyError) as exc:
        homology_dims(c, {"a": 0, "b": 0})
    assert exc.value.invariant == "label-violation"


def test_bigraded_labels():
    c = make({"a": {"b"}, "b": (), "c": ()})
    assert homology_dims(c, {"a": (0, 1), "b": (0, 0), "c": (2, 5)}) == {(2, 5): 1}


def test_k0_hat_homology(k0_hat):
    c, graded = k0_hat
    dims = homology_dims(c, {i: m for i, (_, m) in graded.items()})
    assert dims == {0: 1}


def test_is_boundary_k0(k0_hat):
    c, _ = k0_hat
    assert is_boundary({14}, c)
    assert not is_boundary({3, 4, 28, 31}, c)
    assert is_boundary(set(), c)
    with pytest.raises(NotACycleError):
        is_boundary({9}, c)


def test_filtered_sublevels(k0_hat):
    c, graded = k0_hat
    filt = {i: a for i, (a, _) in graded.items()}
    fc = F2ChainComplex(c.generators, c.boundary, filt)
    # ten entries of the K_0 Alexander vector are positive
    assert len(filtered_sublevel(fc, 0)) == sum(a <= 0 for a, _ in graded.values()) == 21
    assert len(filtered_sublevel(fc, -3)) == 0
    assert len(filtered_sublevel(fc, 2)) == 31
    with pytest.raises(ValueError):
        filtered_sublevel(make({"a": ()}), 0)


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(50):
        vecs = [rng.getrandbits(12) for _ in range(rng.randint(0, 15))]
        assert rank(vecs) + len(kernel(vecs)) == len(vecs)
        for combo in kernel(vecs):
            acc = 0
            for k, v in enumerate(vecs):
                if combo >> k & 1:
                    acc ^= v
            assert acc == 0


def test_cycles_are_cycles(k0_hat):
    c, _ = k0_hat
    zs = cycles(c)
    assert len(zs) == len(c) - rank(c.boundary_vectors())
    for z in zs:
        acc = 0
        for g in z:
            acc ^= c.d(g)
        assert acc == 0
