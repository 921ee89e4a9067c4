"""Headline invariants computed from the graded complexes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .algebra import F2ChainComplex, boundaries, homology_dims, kernel
from .diagram import OneOneDiagram, RasmussenParams, decode
from .errors import ConsistencyError
from .floer import Differential, differential, enumerate_bigons
from .geometry import PLRealization, realize
from .gradings import (
    GradedGenerator,
    check_bigon_equations,
    normalize,
    relative_gradings,
)

# Externally proven upper bound for the slice family (a genus one cobordism
# to an unknot); reported as metadata only.
FAMILY_G4_NOTE = {"g4": 1, "source": "published genus-one cobordism; not computed here"}


def _complex(diff: Differential, graded, filtered=False) -> F2ChainComplex:
    gens = tuple(range(1, diff.p + 1))
    filt = {g.index: g.alexander for g in graded} if filtered else None
    return F2ChainComplex(gens, diff.boundary_map(), filt)


def hfk_table(hat_knot: Differential, graded) -> dict:
    """{(alexander, maslov): dim} of the hat knot homology."""
    c = _complex(hat_knot, graded)
    labels = {g.index: (g.alexander, g.maslov) for g in graded}
    return dict(sorted(homology_dims(c, labels).items()))


def poincare(table: dict) -> dict:
    """{(q exponent, t exponent): coefficient}, q for Maslov and t for Alexander."""
    return {(m, a): c for (a, m), c in sorted(table.items(), key=lambda kv: kv[0][::-1]) if c}


def alexander_polynomial(poly: dict) -> dict:
    """Substitute q = -1; the result must be symmetric with value 1 at t = 1."""
    delta = Counter()
    for (m, a), c in poly.items():
        delta[a] += -c if m % 2 else c
    delta = {a: c for a, c in sorted(delta.items()) if c}
    if any(delta.get(-a) != c for a, c in delta.items()):
        raise ConsistencyError("asymmetric-result", f"Delta = {delta} is not symmetric")
    if sum(delta.values()) != 1:
        raise ConsistencyError("asymmetric-result", f"Delta(1) = {sum(delta.values())}")
    return delta


def seifert_genus(table: dict) -> int:
    return max((a for (a, _), c in table.items() if c), default=0)


def tau(c: F2ChainComplex) -> int:
    """Least level whose sublevel carries a cycle that survives in homology."""
    if c.filtration is None:
        raise ValueError("tau needs the Alexander filtration")
    full = boundaries(c)
    if len(c) - 2 * len(full) != 1:
        raise ConsistencyError("inconsistent-homology", "hat-s3 homology is not one-dimensional")
    order = sorted(c.generators, key=lambda g: c.filtration[g])
    vecs = {g: c.d(g) for g in c.generators}
    idx = c.index
    for a in sorted(set(c.filtration.values())):
        gens = [g for g in order if c.filtration[g] <= a]
        for combo in kernel([vecs[g] for g in gens]):
            v = 0
            for k, g in enumerate(gens):
                if combo >> k & 1:
                    v ^= 1 << idx[g]
            if full.reduce(v):
                return a
    raise ConsistencyError("inconsistent-homology", "no sublevel carries the homology")


def _term(base, shift):
    if shift == 0:
        return base
    return f"{base}{'+' if shift > 0 else '-'}{abs(shift)}"


def cfk_rows(full: Differential, graded) -> dict:
    """k -> [(j, n_w, n_z)] for every generator (empty rows included)."""
    rows = full.rows()
    return {g.index: rows.get(g.index, []) for g in graded}


def cfk_table(full: Differential, graded) -> list[str]:
    """Printable rows in [x, i, j] notation with j - i the Alexander grading."""
    a = {g.index: g.alexander for g in graded}
    lines = []
    for k, row in cfk_rows(full, graded).items():
        head = f"[x_{k}, i, {_term('i', a[k])}]"
        if row:
            body = " + ".join(
                f"[x_{j}, {_term('i', -n_w)}, {_term('i', a[k] - n_z)}]" for j, n_w, n_z in row
            )
        else:
            body = "0"
        lines.append(f"{head} |-> {body}")
    return lines


@dataclass(frozen=True)
class InvariantReport:
    params: tuple | None
    family_index: int | None
    generator_count: int
    gradings: tuple[GradedGenerator, ...]
    hfk: dict
    poincare: dict
    alexander: dict
    seifert_genus: int
    tau: int
    differentials: dict = field(compare=False, repr=False)

    @property
    def g4_lower_bound(self):
        return abs(self.tau)

    @property
    def conway_trivial(self):
        return self.alexander == {0: 1}

    @property
    def topologically_slice_certified(self):
        return self.conway_trivial

    @property
    def smoothly_slice_obstructed(self):
        return self.tau != 0

    @property
    def notes(self):
        return {"g4": FAMILY_G4_NOTE} if self.family_index is not None else {}


def slice_report(
    d: OneOneDiagram,
    graded,
    diffs: dict,
    params: RasmussenParams | None = None,
) -> InvariantReport:
    table = hfk_table(diffs["hat-knot"], graded)
    poly = poincare(table)
    delta = alexander_polynomial(poly)
    # HFK is symmetric under (a, m) -> (-a, m - 2a)
    for (a, m), c in table.items():
        if table.get((-a, m - 2 * a)) != c:
            raise ConsistencyError("hfk-symmetry", f"dim at {(a, m)} has no mirror")
    t = tau(_complex(diffs["hat-s3"], graded, filtered=True))
    params = params or d.params
    return InvariantReport(
        params=params.as_tuple() if params else None,
        family_index=params.n if params else None,
        generator_count=d.p,
        gradings=tuple(graded),
        hfk=table,
        poincare=poly,
        alexander=delta,
        seifert_genus=seifert_genus(table),
        tau=t,
        differentials=diffs,
    )


@dataclass
class PipelineResult:
    diagram: OneOneDiagram
    realization: PLRealization
    bigons: tuple
    report: InvariantReport


def run_pipeline(
    source: OneOneDiagram | RasmussenParams,
    window: int | None = None,
    drift_shift: int = 0,
) -> PipelineResult:
    """Diagram (or parameters) to invariant report, checking the internal invariants on the way."""
    d = decode(source) if isinstance(source, RasmussenParams) else source
    real = realize(d, drift_shift=drift_shift)
    bigons = enumerate_bigons(real, window)
    diffs = {mode: differential(bigons, mode, d.p) for mode in ("hat-knot", "hat-s3", "full")}
    for mode, diff in diffs.items():
        if not diff.square_is_zero():
            raise ConsistencyError("d-squared", f"d^2 != 0 in {mode} mode")
    rel = relative_gradings(bigons, d.p, real)
    graded = normalize(rel, diffs["hat-s3"])
    check_bigon_equations(bigons, graded)
    report = slice_report(d, graded, diffs)
    return PipelineResult(d, real, bigons, report)
