"""Exact piecewise-linear model of a (1,1)-diagram and its universal cover.

The fundamental domain is [0, p] x [0, 1] with alpha along y = 0; deck
translations are (p, 0) and (0, 1).  Slot i sits at (i - 1/2, 0).  Every arc
meets alpha vertically, which keeps corner tests and turning counts exact.

* bottom arc of nesting depth k: up from one foot to height k/(4(Q+1)),
  across, and back down (Q = number of bottom arcs);
* top arc: the mirror image hanging from y = 1;
* through strand with drift D: vertical on [0, 1/3], straight from
  (b - 1/2, 1/3) to (b - 1/2 + D, 2/3), vertical on [2/3, 1].

All coordinates are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .diagram import BOTTOM, TOP, OneOneDiagram
from .errors import DiagramError, RealizationError

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class Arc:
    """One piece of beta inside the annulus.

    ``points`` runs from the foot at slot ``ends[0]`` to the foot at
    ``ends[1]``; for through strands ``ends`` is (bottom slot, top slot).
    ``turn`` is the total turning along ``points`` in half-turns
    (counterclockwise positive).
    """

    kind: str
    ends: tuple[int, int]
    points: tuple[tuple[Fraction, Fraction], ...]
    turn: int


@dataclass(frozen=True)
class PLRealization:
    diagram: OneOneDiagram
    arcs: tuple[Arc, ...]
    z_point: tuple[Fraction, Fraction]
    w_point: tuple[Fraction, Fraction]

    @property
    def p(self):
        return self.diagram.p

    @property
    def deck(self):
        return ((self.p, 0), (0, 1))

    def arc_at(self):
        """Maps (side, slot) -> (arc index, True if the arc starts there)."""
        table = {}
        for i, arc in enumerate(self.arcs):
            a, b = arc.ends
            if arc.kind == "through":
                table[(BOTTOM, a)] = (i, True)
                table[(TOP, b)] = (i, False)
            else:
                side = BOTTOM if arc.kind == "bottom" else TOP
                table[(side, a)] = (i, True)
                table[(side, b)] = (i, False)
        return table


def _depths(spans):
    """Nesting depth of each interval; innermost arcs get depth 1."""
    order = sorted(range(len(spans)), key=lambda i: spans[i][1] - spans[i][0])
    depth = [1] * len(spans)
    for idx, i in enumerate(order):
        lo, hi = spans[i]
        for j in order[:idx]:
            lo2, hi2 = spans[j]
            if lo < lo2 and hi2 < hi:
                depth[i] = max(depth[i], depth[j] + 1)
    return depth


def through_drifts(d: OneOneDiagram):
    """Horizontal drift of each through strand (same order as ``d.through``).

    Tops are unwrapped so that they increase along the bottoms' order.  The
    common multiple of p is chosen to minimise the largest |drift|, ties
    toward positive; when all strands share one drift this is its residue of
    least absolute value.
    """
    if not d.through:
        return ()
    p = d.p
    tops = []
    for _, t in d.through:
        if tops:
            t = t + p * (-(-(tops[-1] + 1 - t) // p))
        tops.append(t)
    raw = [t - b for (b, _), t in zip(d.through, tops)]
    k0 = -(raw[0] // p)
    best = min(
        (k0 + dk for dk in range(-2, 3)),
        key=lambda k: (max(abs(x + k * p) for x in raw), -k),
    )
    return tuple(x + best * p for x in raw)


def realize(d: OneOneDiagram, drift_shift: int = 0, check: bool = True) -> PLRealization:
    """Canonical polyline model of ``d``.

    ``drift_shift`` adds that many multiples of p to every through-strand
    drift (a Dehn twist along the core of the annulus, which preserves the
    knot and the chain complex).
    """
    p = d.p
    arcs = []
    for side, pairs in ((BOTTOM, d.bottom), (TOP, d.top)):
        spans = [d.arc_span(pair, side) for pair in pairs]
        depth = _depths(spans)
        unit = Fraction(1, 4 * (len(pairs) + 1))
        for pair, (lo, hi), k in zip(pairs, spans, depth):
            xa, xb = lo - HALF, hi - HALF
            h = k * unit
            if side == BOTTOM:
                pts = ((xa, 0), (xa, h), (xb, h), (xb, 0))
                turn = -1
            else:
                pts = ((xa, 1), (xa, 1 - h), (xb, 1 - h), (xb, 1))
                turn = 1
            pts = tuple((Fraction(x), Fraction(y)) for x, y in pts)
            start = pair[0] if (lo - pair[0]) % p == 0 else pair[1]
            other = pair[1] if start == pair[0] else pair[0]
            arcs.append(Arc(side, (start, other), pts, turn))
    for (b, t), drift in zip(d.through, through_drifts(d)):
        drift += drift_shift * p
        x0 = b - HALF
        pts = [(x0, Fraction(0)), (x0, THIRD), (x0 + drift, 2 * THIRD), (x0 + drift, Fraction(1))]
        if drift == 0:
            pts = [pts[0], pts[-1]]
        arcs.append(Arc("through", (b, t), tuple((Fraction(x), Fraction(y)) for x, y in pts), 0))

    hb = Fraction(1, 4 * (len(d.bottom) + 1))
    ht = Fraction(1, 4 * (len(d.top) + 1))
    real = PLRealization(
        diagram=d,
        arcs=tuple(arcs),
        z_point=(Fraction(d.z.gap), hb / 8),
        w_point=(Fraction(d.w.gap), 1 - ht / 8),
    )
    if check:
        _check_disjoint(real)
    return real


def _orient(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, c):
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_intersect(a, b, c, d) -> bool:
    """Closed-segment intersection test in exact arithmetic."""
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


def _check_disjoint(real):
    """Exact pairwise intersection tests between arcs and their translates.

    Sweeps segments sorted by left end; coordinates are scaled to integers.
    """
    p = real.p
    sx, sy = scale_factors(real)
    base = []
    for i, arc in enumerate(real.arcs):
        pts = [(int(x * sx), int(y * sy)) for x, y in arc.points]
        for m, (a, b) in enumerate(zip(pts, pts[1:])):
            base.append((i, m, a, b))
    xs = [x for _, _, a, b in base for x in (a[0], b[0])]
    reach = (max(xs) - min(xs)) // (p * sx) + 1
    segs = []
    for k in range(-reach, reach + 1):
        dx = k * p * sx
        for i, m, a, b in base:
            a2, b2 = (a[0] + dx, a[1]), (b[0] + dx, b[1])
            box = (min(a2[0], b2[0]), max(a2[0], b2[0]), min(a2[1], b2[1]), max(a2[1], b2[1]))
            segs.append((box, (i, k, m), a2, b2))
    segs.sort(key=lambda s: s[0][0])
    for n, (box, key, a, b) in enumerate(segs):
        for box2, key2, c, d in segs[n + 1:]:
            if box2[0] > box[1]:
                break
            if box2[2] > box[3] or box2[3] < box[2]:
                continue
            if key[:2] == key2[:2] and abs(key[2] - key2[2]) <= 1:
                continue
            if segments_intersect(a, b, c, d):
                raise RealizationError(f"arcs {key[0]} and {key2[0]} meet near {a}")
    for x0, y0 in (real.z_point, real.w_point):
        for k in range(-reach, reach + 1):
            q = (int((x0 + k * p) * sx), int(y0 * sy))
            for _, _, a, b in base:
                if _orient(a, b, q) == 0 and _on_segment(a, b, q):
                    raise RealizationError(f"basepoint {(x0, y0)} lies on beta")


# --- universal cover -------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """A point where a traced lift of beta meets a lift of alpha."""

    slot: int
    vertex: int
    x: Fraction
    y: int
    entry: str


@dataclass(frozen=True)
class Trace:
    """One period of a beta lift starting at (1/2, 0), leaving x_1 upward.

    ``points[0]`` is x_1 and the trace ends at x_1 + period.  ``crossings``
    lists the p intersections with alpha lifts in order (the first one is
    x_1 itself); ``turns[k]`` is the turning in half-turns from the start to
    crossing k.
    """

    points: tuple[tuple[Fraction, Fraction], ...]
    crossings: tuple[Crossing, ...]
    turns: tuple[int, ...]
    period: tuple[int, int]
    total_turn: int


def trace_beta(real: PLRealization) -> Trace:
    p = real.p
    table = real.arc_at()
    x, y = HALF, 0
    slot, leave = 1, BOTTOM
    pts = [(x, Fraction(0))]
    crossings = [Crossing(1, 0, x, 0, TOP)]
    turns = [0]
    turn = 0
    for step in range(p):
        idx, forward = table[(leave, slot)]
        arc = real.arcs[idx]
        seq = arc.points if forward else arc.points[::-1]
        turn += arc.turn if forward else -arc.turn
        dx, dy = x - seq[0][0], y - seq[0][1]
        pts.extend((px + dx, py + dy) for px, py in seq[1:])
        x, yf = pts[-1]
        y = int(yf)
        if arc.kind == "through":
            arrive = TOP if leave == BOTTOM else BOTTOM
        else:
            arrive = leave
        slot = arc.ends[1] if forward else arc.ends[0]
        if step < p - 1:
            crossings.append(Crossing(slot, len(pts) - 1, x, y, arrive))
            turns.append(turn)
        leave = TOP if arrive == BOTTOM else BOTTOM
    if slot != 1 or leave != BOTTOM:
        raise DiagramError("trace-failure", "beta lift did not return to x_1")
    px = x - HALF
    if px.denominator != 1 or int(px) % p or abs(y) != 1:
        raise DiagramError("trace-failure", f"trace does not close to a deck translate: {(px, y)}")
    return Trace(tuple(pts), tuple(crossings), tuple(turns), (int(px), y), turn)


@dataclass(frozen=True)
class LiftedStrand:
    """The base beta lift translated by ``offset``; ``points`` covers the window."""

    offset: tuple[int, int]
    period: tuple[int, int]
    points: tuple[tuple[Fraction, Fraction], ...] = field(compare=False, repr=False)


def window_points(trace: Trace, window: int):
    """Base lift traced over periods -window..window."""
    (px, py) = trace.period
    pts = []
    for j in range(-window, window + 1):
        shifted = [(x + j * px, y + j * py) for x, y in trace.points]
        pts.extend(shifted if not pts else shifted[1:])
    return pts


def lift_beta(real: PLRealization, window: int):
    """Horizontal translates of the beta lift meeting the window box.

    Every lift of beta is a translate of the base lift by a multiple of (p, 0)
    because the period has vertical component +-1.
    """
    p = real.p
    trace = trace_beta(real)
    base = window_points(trace, window)
    lo_x, hi_x = -window * p, (window + 1) * p
    lo_y, hi_y = -window, window + 1
    in_band = [x for x, y in base if lo_y <= y <= hi_y]
    strands = set()
    if not in_band:
        return strands
    xmin, xmax = min(in_band), max(in_band)
    kmin = -((xmax - lo_x) // p) - 1
    kmax = (hi_x - xmin) // p + 1
    for k in range(int(kmin), int(kmax) + 1):
        if xmin + k * p > hi_x or xmax + k * p < lo_x:
            continue
        pts = tuple((x + k * p, y) for x, y in base)
        if any(lo_x <= x <= hi_x and lo_y <= y <= hi_y for x, y in pts):
            strands.add(LiftedStrand((k * p, 0), trace.period, pts))
    return strands


def basepoint_lifts(real: PLRealization, window: int):
    """Deck translates of z and w in [-window*p, (window+1)*p) x [-window, window+1)."""
    p = real.p
    out = set()
    for tag, (x0, y0) in (("z", real.z_point), ("w", real.w_point)):
        for k in range(-window - 1, window + 2):
            for j in range(-window - 1, window + 2):
                x, y = x0 + k * p, y0 + j
                if -window * p <= x < (window + 1) * p and -window <= y < window + 1:
                    out.add((tag, (x, y)))
    return out


def scale_factors(real: PLRealization):
    """Integers (sx, sy) that clear every denominator in the model.

    Also clears the quarter-slot and half-innermost-height offsets used for
    corner samples by the grading code.
    """
    dens_x, dens_y = {4}, {1}
    for arc in real.arcs:
        for x, y in arc.points:
            dens_x.add(x.denominator)
            dens_y.add(y.denominator)
    for x, y in (real.z_point, real.w_point):
        dens_x.add(x.denominator)
        dens_y.add(y.denominator)
    for n in (len(real.diagram.bottom), len(real.diagram.top)):
        dens_y.add(8 * (n + 1))
    return lcm(*dens_x), lcm(*dens_y)
