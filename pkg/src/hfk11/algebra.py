"""Linear algebra over F_2 for small chain complexes.

Vectors are Python ints used as bitsets (bit k = k-th generator), which is
plenty fast for a few hundred generators.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import ConsistencyError, NotACycleError


def _lowered(label):
    if isinstance(label, tuple):
        return label[:-1] + (label[-1] - 1,)
    return label - 1


class _Basis:
    """Incrementally reduced basis keyed by leading bit."""

    def __init__(self):
        self.pivots = {}

    def reduce(self, v):
        while v:
            top = v.bit_length() - 1
            row = self.pivots.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v):
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    def __len__(self):
        return len(self.pivots)


def rank(vectors) -> int:
    basis = _Basis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def kernel(vectors):
    """Basis of {c : sum_k c_k vectors[k] = 0}, as bitsets over the indices."""
    pivots = {}
    out = []
    for k, v in enumerate(vectors):
        combo = 1 << k
        while v:
            top = v.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        if v:
            pivots[v.bit_length() - 1] = (v, combo)
        else:
            out.append(combo)
    return out


@dataclass(frozen=True)
class F2ChainComplex:
    """Finite chain complex over F_2 with named generators.

    ``boundary`` maps each generator to the frozenset of generators in its
    boundary.  ``filtration``, when given, must not increase along the
    boundary.  d o d = 0 is checked on construction.
    """

    generators: tuple
    boundary: dict = field(compare=False)
    filtration: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = set(self.generators)
        for g in self.generators:
            if not self.boundary.get(g, frozenset()) <= gens:
                raise ConsistencyError("subcomplex", f"boundary of {g} leaves the complex")
        if self.filtration is not None:
            for g in self.generators:
                for h in self.boundary.get(g, ()):
                    if self.filtration[h] > self.filtration[g]:
                        raise ConsistencyError(
                            "filtration", f"{g} -> {h} raises the filtration level"
                        )
        for g in self.generators:
            acc = 0
            for h in self.boundary.get(g, ()):
                acc ^= self.vector(self.boundary.get(h, ()))
            if acc:
                raise ConsistencyError("d-squared", f"d(d({g})) != 0")

    @property
    def index(self):
        return {g: k for k, g in enumerate(self.generators)}

    def vector(self, chain) -> int:
        idx = self.index
        v = 0
        for g in chain:
            v ^= 1 << idx[g]
        return v

    def chain(self, vector):
        return frozenset(g for k, g in enumerate(self.generators) if vector >> k & 1)

    def d(self, g) -> int:
        return self.vector(self.boundary.get(g, ()))

    def boundary_vectors(self):
        return [self.d(g) for g in self.generators]

    def __len__(self):
        return len(self.generators)


def homology_dims(c: F2ChainComplex, grading) -> dict:
    """Homology dimension per grading label.

    Labels are ints or tuples; the boundary must lower the last component by
    one and keep the others.
    """
    groups = defaultdict(list)
    for g in c.generators:
        groups[grading[g]].append(g)
    for g in c.generators:
        for h in c.boundary.get(g, ()):
            if grading[h] != _lowered(grading[g]):
                raise ConsistencyError(
                    "label-violation", f"{g} -> {h} maps label {grading[g]} to {grading[h]}"
                )
    ranks = {label: rank(c.d(g) for g in gens) for label, gens in groups.items()}
    dims = {}
    for label, gens in groups.items():
        above = [k for k in groups if _lowered(k) == label]
        dims[label] = len(gens) - ranks[label] - sum(ranks[k] for k in above)
    return {k: v for k, v in dims.items() if v}


def total_homology(c: F2ChainComplex) -> int:
    vecs = c.boundary_vectors()
    r = rank(vecs)
    return len(c) - 2 * r


def boundaries(c: F2ChainComplex) -> _Basis:
    basis = _Basis()
    for v in c.boundary_vectors():
        basis.add(v)
    return basis


def is_boundary(cycle, c: F2ChainComplex) -> bool:
    """True iff ``cycle`` (a set of generators) lies in the image of d."""
    v = c.vector(cycle)
    dv = 0
    for g in cycle:
        dv ^= c.d(g)
    if dv:
        raise NotACycleError(f"chain {sorted(cycle)} has non-zero boundary")
    return boundaries(c).reduce(v) == 0


def filtered_sublevel(c: F2ChainComplex, a: int) -> F2ChainComplex:
    """Subcomplex spanned by generators of filtration level <= a."""
    if c.filtration is None:
        raise ValueError("complex carries no filtration")
    gens = tuple(g for g in c.generators if c.filtration[g] <= a)
    return F2ChainComplex(
        gens,
        {g: c.boundary.get(g, frozenset()) for g in gens},
        {g: c.filtration[g] for g in gens},
    )


def cycles(c: F2ChainComplex):
    """Basis of the cycle space, as chains (frozensets of generators)."""
    return [
        frozenset(c.generators[k] for k in range(len(c)) if combo >> k & 1)
        for combo in kernel(c.boundary_vectors())
    ]
