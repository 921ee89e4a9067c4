"""Relative and absolute Alexander/Maslov gradings.

Each bigon from x to y gives

    A(x) - A(y) = n_z - n_w,        M(x) - M(y) = 1 - 2 n_w,

and these are propagated over the graph whose edges are bigons.  Pairs in
different components are connected by an explicit domain (see
:func:`domain_fallback`).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import F2ChainComplex, homology_dims
from .diagram import OneOneDiagram
from .errors import ConsistencyError
from .floer import CoverModel, Differential, quadrant_windings, required_window
from .geometry import PLRealization, realize


@dataclass(frozen=True, order=True)
class GradedGenerator:
    index: int
    alexander: int
    maslov: int


def _model(real: PLRealization) -> CoverModel:
    model = CoverModel(real, required_window(real))
    if not model.complete:
        raise ConsistencyError("no-domain", "traced lift misses some generators")
    return model


def _corner(model: CoverModel, i, j, vertex):
    """Multiplicity at a corner: average of the four nearby quadrants."""
    return Fraction(sum(quadrant_windings(model, i, j, vertex)), 4)


def _domain(model: CoverModel, x: int, y: int):
    """(n_w, n_z, index) of the domain bounded by beta from y to x and alpha back.

    Its winding-number 2-chain is a Whitney domain from x to y.
    """
    where = model.crossing_of_slot()
    _, _, _, turn_y = model.crossings[where[y]]
    vi = model.crossings[where[y]][0]
    vj, _, _, turn_x = model.crossings[where[x]]
    n_w, n_z = model.multiplicities(vi, vj)
    # beta meets alpha orthogonally, so all turning away from the corners is
    # in the beta arcs; the alpha edge is straight
    euler = Fraction(turn_x - turn_y, 2)
    index = euler + _corner(model, vi, vj, vi) + _corner(model, vi, vj, vj)
    if index.denominator != 1:
        raise ConsistencyError("no-domain", f"non-integral index {index} for {x} -> {y}")
    return n_w, n_z, int(index)


def domain_fallback(d: OneOneDiagram | PLRealization, x: int, y: int, model=None):
    """Relative gradings (A(x) - A(y), M(x) - M(y)) from a connecting domain."""
    if x == y:
        return (0, 0)
    if model is None:
        real = d if isinstance(d, PLRealization) else realize(d)
        model = _model(real)
    n_w, n_z, index = _domain(model, x, y)
    return (n_z - n_w, index - 2 * n_w)


def _components(p, edges):
    adj = {i: [] for i in range(1, p + 1)}
    for s, t, da, dm in edges:
        adj[s].append((t, da, dm))
        adj[t].append((s, -da, -dm))
    return adj


def relative_gradings(bigons, p: int, real: PLRealization | None = None) -> dict:
    """Solve the bigon equations; returns {i: (A_i, M_i)} up to a global shift.

    ``real`` is needed only when the bigon graph is disconnected.
    """
    edges = [(g.source, g.target, g.n_w - g.n_z, 2 * g.n_w - 1) for g in bigons]
    adj = _components(p, edges)
    sol = {}
    roots = []
    for root in range(1, p + 1):
        if root in sol:
            continue
        if roots:
            if real is None:
                raise ConsistencyError("no-domain", "bigon graph is disconnected")
            da, dm = _fallback(real, edges, roots[0], root)
            a0, m0 = sol[roots[0]]
            sol[root] = (a0 - da, m0 - dm)
        else:
            sol[root] = (0, 0)
        roots.append(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            au, mu = sol[u]
            for v, da, dm in adj[u]:
                want = (au + da, mu + dm)
                if v not in sol:
                    sol[v] = want
                    queue.append(v)
                elif sol[v] != want:
                    raise ConsistencyError(
                        "inconsistent-system", f"bigon equations disagree at x_{v}"
                    )
    return sol


def _fallback(real, edges, x, y):
    model = _model(real)
    sign = 1
    if edges:
        # calibrate on one bigon edge before trusting the domain computation
        s, t, da, dm = edges[0]
        got = domain_fallback(real, s, t, model)
        if got == (-da, -dm):
            pass
        elif got == (da, dm):
            sign = -1
        else:
            raise ConsistencyError("no-domain", f"domain solver disagrees with bigon {s}->{t}")
    ga, gm = domain_fallback(real, x, y, model)
    return (sign * ga, sign * gm)


def euler_characteristic(gradings) -> Counter:
    """Alexander exponent -> sum of (-1)^M."""
    chi = Counter()
    for a, m in gradings.values():
        chi[a] += -1 if m % 2 else 1
    return Counter({k: v for k, v in chi.items() if v})


def _symmetric_shift(chi):
    if not chi:
        raise ConsistencyError("no-symmetric-shift", "Euler characteristic vanishes")
    lo, hi = min(chi), max(chi)
    if (lo + hi) % 2:
        raise ConsistencyError("no-symmetric-shift", "support is not centred on an integer")
    c = -(lo + hi) // 2
    if any(chi.get(a, 0) != chi.get(-a - 2 * c, 0) for a in chi):
        raise ConsistencyError("no-symmetric-shift", f"no shift makes {dict(chi)} symmetric")
    return c


def hat_s3_complex(diff: Differential, gradings=None) -> F2ChainComplex:
    gens = tuple(range(1, diff.p + 1))
    filt = None if gradings is None else {i: gradings[i][0] for i in gens}
    return F2ChainComplex(gens, diff.boundary_map(), filt)


def normalize(relative: dict, hat_s3: Differential) -> tuple[GradedGenerator, ...]:
    """Fix absolute gradings.

    Maslov: the hat-s3 homology sits in degree 0.  Alexander: the Euler
    characteristic becomes symmetric (and must then equal 1 at t = 1).
    """
    c = hat_s3_complex(hat_s3)
    dims = homology_dims(c, {i: relative[i][1] for i in relative})
    if sum(dims.values()) != 1:
        raise ConsistencyError("hat-s3-homology", f"expected rank 1, got {dims}")
    (m0,) = dims
    shifted = {i: (a, m - m0) for i, (a, m) in relative.items()}
    chi = euler_characteristic(shifted)
    ca = _symmetric_shift(chi)
    if sum(chi.values()) != 1:
        raise ConsistencyError("non-unit-augmentation", f"chi(1) = {sum(chi.values())}")
    return tuple(sorted(GradedGenerator(i, a + ca, m) for i, (a, m) in shifted.items()))


def check_bigon_equations(bigons, graded) -> None:
    g = {x.index: x for x in graded}
    for b in bigons:
        src, dst = g[b.source], g[b.target]
        if (src.alexander - dst.alexander, src.maslov - dst.maslov) != (
            b.n_z - b.n_w,
            1 - 2 * b.n_w,
        ):
            raise ConsistencyError(
                "inconsistent-system", f"bigon {b.source}->{b.target} violates the gradings"
            )
