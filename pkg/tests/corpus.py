"""Shared diagram corpus and property checks for the test suite."""

from __future__ import annotations

import random
from collections import Counter

from hfk11.diagram import RasmussenParams, decode, family_params, validate
from hfk11.errors import DiagramError, ParameterError
from hfk11.floer import DEFAULT_WINDOW, audit_ok, enumerate_bigons, required_window
from hfk11.gradings import euler_characteristic, hat_s3_complex
from hfk11.algebra import homology_dims

SEED = 20261019
RANDOM_COUNT = 100
P_MAX = 200


def random_params(count=RANDOM_COUNT, seed=SEED, p_max=P_MAX):
    """Distinct valid tuples with p <= p_max, drawn from a fixed seed."""
    rng = random.Random(seed)
    seen = {}
    while len(seen) < count:
        p = rng.randint(2, p_max)
        q = rng.randrange(0, (p + 1) // 2)
        r = rng.randrange(0, p)
        u = rng.randrange(0, p - 2 * q)
        params = RasmussenParams(p, q, r, u + 2 * q - r)
        if params.s < 0 or params.as_tuple() in seen:
            continue
        try:
            params.check()
            decode(params)
        except (ParameterError, DiagramError):
            continue
        seen[params.as_tuple()] = params
    return list(seen.values())


def named_corpus():
    items = [(f"K_{n}", family_params(n)) for n in range(4)]
    items += [("unknot", RasmussenParams(1, 0, 0, 0)), ("fig8", RasmussenParams(5, 2, 0, 4))]
    return items


def property_failures(result) -> list[str]:
    """Every property of a pipeline result that does not hold."""
    bad = []
    d, real, rep = result.diagram, result.realization, result.report
    v = validate(d)
    if not (v.ok and v.cycle_length == d.p and abs(v.algebraic_intersection) == 1):
        bad.append("validate")
    for mode, diff in rep.differentials.items():
        if not diff.square_is_zero():
            bad.append(f"d-squared {mode}")
    m = {g.index: g.maslov for g in rep.gradings}
    dims = homology_dims(hat_s3_complex(rep.differentials["hat-s3"]), m)
    if dims != {0: 1}:
        bad.append(f"hat-s3 homology {dims}")
    for (a, mm), c in rep.hfk.items():
        if rep.hfk.get((-a, mm - 2 * a)) != c:
            bad.append(f"hfk symmetry at {(a, mm)}")
            break
    chi = euler_characteristic({g.index: (g.alexander, g.maslov) for g in rep.gradings})
    if any(chi.get(-a) != c for a, c in chi.items()) or sum(chi.values()) != 1:
        bad.append(f"chi {dict(chi)}")
    bigger = enumerate_bigons(real, window=_window(real) + 1, check_stability=False)
    if Counter(g.key for g in bigger) != Counter(g.key for g in result.bigons):
        bad.append("window+1")
    if not all(audit_ok(b, real) for b in result.bigons):
        bad.append("audit")
    return bad


def _window(real):
    return max(DEFAULT_WINDOW, required_window(real))
