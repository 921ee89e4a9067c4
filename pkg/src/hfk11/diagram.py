"""Combinatorial (1,1)-diagrams.

The torus is cut along alpha into an annulus whose two boundary circles are
copies of alpha.  Each intersection point x_i of alpha and beta (a *slot*,
numbered 1..p along alpha) therefore has a bottom end, where beta leaves into
the annulus from the lower boundary, and a top end on the upper boundary.
Inside the annulus beta is a disjoint union of

* bottom arcs, joining two bottom ends (a rainbow around z),
* top arcs, joining two top ends (a rainbow around w),
* through strands, joining a bottom end to a top end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DiagramError, ParameterError

BOTTOM = "bottom"
TOP = "top"


def _other_side(side):
    return TOP if side == BOTTOM else BOTTOM


@dataclass(frozen=True)
class RasmussenParams:
    p: int
    q: int
    r: int
    s: int
    n: int | None = field(default=None, compare=False)

    @property
    def u(self) -> int:
        """Cyclic offset of the through-strand matching."""
        return self.s - (2 * self.q - self.r)

    def as_tuple(self):
        return (self.p, self.q, self.r, self.s)

    def check(self):
        p, q, r = self.p, self.q, self.r
        if p < 1:
            raise ParameterError(f"p must be positive, got {p}")
        if q < 0 or 2 * q >= p:
            raise ParameterError(f"need 0 <= 2q < p, got p={p}, q={q}")
        if not 0 <= r < p:
            raise ParameterError(f"need 0 <= r < p, got r={r}")
        if not 0 <= self.u < p - 2 * q:
            raise ParameterError(
                f"through offset u = s - (2q - r) = {self.u} outside [0, {p - 2 * q})"
            )


def family_params(n: int) -> RasmussenParams:
    """Parameters of the n-th member K_n of the slice family."""
    if n < 0:
        raise ParameterError(f"family index must be non-negative, got {n}")
    return RasmussenParams(64 * n + 31, 24 * n + 12, 16 * n + 6, 32 * n + 18, n=n)


@dataclass(frozen=True)
class Anchor:
    """Basepoint placement: on ``side`` of alpha, at x = ``gap``.

    ``gap`` g is the position between slots g and g+1 (cyclically, 0 <= g < p).
    """

    side: str
    gap: int


@dataclass(frozen=True)
class OneOneDiagram:
    p: int
    bottom: tuple[tuple[int, int], ...]
    top: tuple[tuple[int, int], ...]
    through: tuple[tuple[int, int], ...]
    z: Anchor
    w: Anchor
    params: RasmussenParams | None = field(default=None, compare=False)

    def ends(self):
        """Maps slot -> (kind, partner) for the bottom and the top end."""
        bottom_end, top_end = {}, {}
        for a, b in self.bottom:
            bottom_end[a] = ("arc", b)
            bottom_end[b] = ("arc", a)
        for a, b in self.top:
            top_end[a] = ("arc", b)
            top_end[b] = ("arc", a)
        for b, t in self.through:
            bottom_end[b] = ("through", t)
            top_end[t] = ("through", b)
        return {BOTTOM: bottom_end, TOP: top_end}

    def arc_span(self, pair, side):
        """Unwrapped slot interval (lo, hi) an arc on ``side`` hugs.

        The arc runs over the side of its chord containing no through-strand
        feet; both ends lie in one window of p slots just past the first through foot,
        so hi may exceed p.
        """
        feet = sorted(b if side == BOTTOM else t for b, t in self.through)
        return _span(pair, self.p, feet[0] if feet else None)

    def to_record(self):
        return {
            "p": self.p,
            "bottom": [list(x) for x in self.bottom],
            "top": [list(x) for x in self.top],
            "through": [list(x) for x in self.through],
            "z_gap": self.z.gap,
            "w_gap": self.w.gap,
        }


def _span(pair, p, cut):
    a, b = pair
    if cut is None:
        return (min(a, b), max(a, b))
    a2 = a if a > cut else a + p
    b2 = b if b > cut else b + p
    # all spans share one frame (cut, cut + p] so nesting is preserved
    return (min(a2, b2), max(a2, b2))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    cycle_length: int
    algebraic_intersection: int
    failures: tuple[str, ...] = ()


def _sigma(m, p):
    return (m - 1) % p + 1


def decode(params: RasmussenParams) -> OneOneDiagram:
    """Decode Rasmussen parameters into a validated diagram."""
    params.check()
    p, q, r, u = params.p, params.q, params.r, params.u
    bottom = [(j, 2 * q + 1 - j) for j in range(1, q + 1)]
    top = [(_sigma(r + 1 + j, p), _sigma(r + 2 + 2 * q - j, p)) for j in range(1, q + 1)]
    m = p - 2 * q
    # free top slots in cyclic order after the top rainbow; the first through
    # strand lands r + u places along (u = 0 sends it to slot r + 1)
    free_top = [_sigma(r + 1 + 2 * q + k, p) for k in range(1, m + 1)]
    through = [(2 * q + k, free_top[(k - 1 + r + u) % m]) for k in range(1, m + 1)]
    if q == 0:
        z, w = Anchor(BOTTOM, 0), Anchor(TOP, 0)
    else:
        z = Anchor(BOTTOM, q % p)
        w = Anchor(TOP, (r + 1 + q) % p)
    d = _build(p, bottom, top, through, z, w, params)
    report = validate(d)
    if not report.ok:
        raise DiagramError("validity", f"{params.as_tuple()}: {', '.join(report.failures)}")
    return d


def _normalize_pairs(pairs):
    return tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))


def _build(p, bottom, top, through, z, w, params=None):
    return OneOneDiagram(
        p=p,
        bottom=_normalize_pairs(bottom),
        top=_normalize_pairs(top),
        through=tuple(sorted((int(b), int(t)) for b, t in through)),
        z=z,
        w=w,
        params=params,
    )


def _interleaved(c1, c2):
    a, b = c1
    c, d = c2
    return a < c < b < d or c < a < d < b


def _check_structure(d):
    p = d.p
    for side, arcs, feet in (
        (BOTTOM, d.bottom, [b for b, _ in d.through]),
        (TOP, d.top, [t for _, t in d.through]),
    ):
        used = [x for pair in arcs for x in pair] + feet
        if sorted(used) != list(range(1, p + 1)):
            raise DiagramError("coverage", f"{side} ends do not cover slots 1..{p} exactly once")
        for i, c1 in enumerate(arcs):
            if c1[0] == c1[1]:
                raise DiagramError("coverage", f"{side} arc {c1} is a loop")
            for c2 in arcs[i + 1:]:
                if _interleaved(c1, c2):
                    raise DiagramError("crossing-arcs", f"{side} arcs {c1} and {c2} interleave")
        feet_set = set(feet)
        for a, b in arcs:
            inside = set(range(a + 1, b))
            if feet_set & inside and feet_set - inside - {a, b}:
                raise DiagramError(
                    "crossing-arcs", f"{side} arc {(a, b)} separates through-strand feet"
                )
    # through strands must keep their cyclic order to be disjoint
    tops = [t for _, t in d.through]
    if tops:
        k = tops.index(min(tops))
        rotated = tops[k:] + tops[:k]
        if rotated != sorted(tops):
            raise DiagramError("crossing-arcs", "through strands are not in cyclic order")


def _infer_anchor(d, side, arcs):
    if not arcs:
        return Anchor(side, 0)
    spans = [d.arc_span(a, side) for a in arcs]
    innermost = [lo for lo, hi in spans if hi - lo == 1]
    if len(innermost) != 1:
        raise DiagramError("anchor", f"cannot infer the {side} basepoint; give it explicitly")
    return Anchor(side, innermost[0] % d.p)


def from_matchings(bottom, top, through, z_gap=None, w_gap=None, p=None) -> OneOneDiagram:
    """Build and validate a diagram from explicit arc matchings.

    Basepoint gaps default to the inside of the innermost rainbow arc (or 0
    when a side has no arcs).
    """
    slots = [x for pair in list(bottom) + list(top) + list(through) for x in pair]
    if p is None:
        p = max(slots) if slots else 0
    if p < 1:
        raise DiagramError("coverage", "empty diagram")
    d = _build(p, bottom, top, through, Anchor(BOTTOM, 0), Anchor(TOP, 0))
    _check_structure(d)
    z = Anchor(BOTTOM, z_gap % p) if z_gap is not None else _infer_anchor(d, BOTTOM, d.bottom)
    w = Anchor(TOP, w_gap % p) if w_gap is not None else _infer_anchor(d, TOP, d.top)
    d = _build(p, d.bottom, d.top, d.through, z, w)
    report = validate(d)
    if not report.ok:
        raise DiagramError("validity", ", ".join(report.failures))
    return d


def from_record(record) -> OneOneDiagram:
    """Inverse of :meth:`OneOneDiagram.to_record` (the CLI matchings format)."""
    try:
        return from_matchings(
            [tuple(x) for x in record["bottom"]],
            [tuple(x) for x in record["top"]],
            [tuple(x) for x in record["through"]],
            z_gap=record.get("z_gap"),
            w_gap=record.get("w_gap"),
            p=record.get("p"),
        )
    except (KeyError, TypeError) as exc:
        raise DiagramError("coverage", f"malformed matchings record: {exc}") from exc


def _walk(d):
    ends = d.ends()
    seq = []
    slot, leave = 1, BOTTOM
    for _ in range(2 * d.p + 1):
        kind, other = ends[leave][slot]
        arrive = leave if kind == "arc" else _other_side(leave)
        slot = other
        seq.append((slot, arrive))
        leave = _other_side(arrive)
        if slot == 1:
            break
    return [seq[-1]] + seq[:-1]


def validate(d: OneOneDiagram) -> ValidationReport:
    seq = _walk(d)
    alg = sum(1 if side == TOP else -1 for _, side in seq)
    failures = []
    if len(seq) != d.p:
        failures.append("not-single-cycle")
    if alg not in (1, -1):
        failures.append("algebraic-intersection")
    return ValidationReport(not failures, len(seq), alg, tuple(failures))


def beta_cycle(d: OneOneDiagram):
    """Slots in the order beta meets them, starting at x_1.

    Each entry is ``(slot, side)`` where side is the end through which beta
    arrives.  Orientation: beta leaves x_1 through its bottom end.
    """
    seq = _walk(d)
    if len(seq) != d.p:
        raise DiagramError("invalid-diagram", "beta is not a single curve through every slot")
    return tuple(seq)
