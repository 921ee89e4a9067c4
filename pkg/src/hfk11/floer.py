"""Maslov index one disks as bigons in the universal cover.

Every lift of beta is a horizontal translate of one base lift, and the base
lift meets the alpha lift y = 0 in exactly p points, one over each generator.
So the disks of the torus, up to deck translation, are the bigons bounded by
the line y = 0 and the base lift; each is found once.  A bigon need not be
embedded: beta may cross the alpha edge as long as the domain stays
non-negative, which makes it an immersed disk.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError, WindowInstabilityError
from .geometry import PLRealization, scale_factors, trace_beta

DEFAULT_WINDOW = 4
MODES = ("hat-knot", "hat-s3", "full")


@dataclass(frozen=True)
class Witness:
    """Boundary of a bigon in scaled integer coordinates.

    ``beta`` runs from the FROM corner to the TO corner; the alpha side is the
    segment of y = 0 between them.  Divide by ``scale`` for true coordinates.
    """

    beta: tuple[tuple[int, int], ...]
    scale: tuple[int, int]

    def beta_points(self):
        sx, sy = self.scale
        return [(Fraction(x, sx), Fraction(y, sy)) for x, y in self.beta]

    def polygon(self):
        """Closed boundary, domain on the left (counterclockwise)."""
        pts = self.beta_points()
        return pts[::-1]


@dataclass(frozen=True)
class Bigon:
    source: int
    target: int
    n_w: int
    n_z: int
    witness: Witness | None = field(default=None, compare=False, repr=False)

    @property
    def key(self):
        return (self.source, self.target, self.n_w, self.n_z)


class CoverModel:
    """The base beta lift over a window of periods, in integer coordinates."""

    def __init__(self, real: PLRealization, window: int = DEFAULT_WINDOW):
        self.real = real
        self.window = window
        self.p = p = real.p
        self.sx, self.sy = sx, sy = scale_factors(real)
        trace = trace_beta(real)
        self.trace = trace
        # scale the base lift once, then tile it over periods -window..window
        bx = np.array([int(x * sx) for x, _ in trace.points], dtype=np.int64)
        by = np.array([int(y * sy) for _, y in trace.points], dtype=np.int64)
        px, py = trace.period
        xs, ys = [], []
        for j in range(-window, window + 1):
            cut = 0 if not xs else 1
            xs.append(bx[cut:] + j * px * sx)
            ys.append(by[cut:] + j * py * sy)
        self.X = np.concatenate(xs)
        self.Y = np.concatenate(ys)
        bound = max(int(np.abs(self.X).max()), int(np.abs(self.Y).max()), 1)
        if bound > 2**28:
            raise ConsistencyError("coordinate-range", "lift too large for int64 arithmetic")
        cross = self.X[:-1] * self.Y[1:] - self.X[1:] * self.Y[:-1]
        self.area_prefix = np.concatenate(([0], np.cumsum(cross)))

        per = len(trace.points) - 1
        px, v = trace.period
        self.period = (px, v)
        self.row_width = p * sx
        crossings = []
        for j in range(-window, window + 1):
            base = (j + window) * per
            for c, t in zip(trace.crossings, trace.turns):
                if c.y + j * v == 0:
                    crossings.append((base + c.vertex, c.slot, int((c.x + j * px) * sx), j * trace.total_turn + t))
        crossings.sort()
        self.crossings = crossings
        zx, zy = real.z_point
        wx, wy = real.w_point
        self.basepoints = {"z": (int(zx * sx), int(zy * sy)), "w": (int(wx * sx), int(wy * sy))}
        self._prefix_cache = {}

    @property
    def complete(self):
        return len(self.crossings) == self.p

    def crossing_of_slot(self):
        return {slot: k for k, (_, slot, _, _) in enumerate(self.crossings)}

    def _ray_prefix(self, px, py):
        """Prefix sums of signed crossings of the downward ray from (px, py)."""
        key = (px, py)
        hit = self._prefix_cache.get(key)
        if hit is not None:
            return hit
        X, Y = self.X, self.Y
        ax, ay, bx, by = X[:-1], Y[:-1], X[1:], Y[1:]
        dx = bx - ax
        straddle = ((ax < px) & (px < bx)) | ((bx < px) & (px < ax))
        val = (ay - py) * dx + (by - ay) * (px - ax)
        below = straddle & ((val < 0) != (dx < 0)) & (val != 0)
        contrib = np.where(below, np.sign(dx), 0)
        prefix = np.concatenate(([0], np.cumsum(contrib)))
        self._prefix_cache[key] = prefix
        return prefix

    def winding(self, i, j, px, py):
        """Winding number of beta[i -> j] + alpha[x_j -> x_i] around a point.

        ``i`` and ``j`` are vertex indices of crossings on y = 0.
        """
        prefix = self._ray_prefix(px, py)
        if i <= j:
            w = int(prefix[j] - prefix[i])
        else:
            w = -int(prefix[i] - prefix[j])
        xi, xj = int(self.X[i]), int(self.X[j])
        if py > 0 and min(xi, xj) < px < max(xi, xj):
            w += 1 if xi > xj else -1
        return w

    def lifts_in_box(self, tag, xmin, xmax, ymin, ymax):
        bx, by = self.basepoints[tag]
        P, R = self.row_width, self.sy
        a0, a1 = -((bx - xmin) // P), (xmax - bx) // P
        b0, b1 = -((by - ymin) // R), (ymax - by) // R
        return [(bx + a * P, by + b * R) for a in range(a0, a1 + 1) for b in range(b0, b1 + 1)]

    def multiplicities(self, i, j):
        """Sum of winding numbers around z and w lifts for beta[i -> j] + alpha."""
        lo, hi = min(i, j), max(i, j)
        xs, ys = self.X[lo:hi + 1], self.Y[lo:hi + 1]
        box = (int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max()))
        out = {}
        for tag in ("w", "z"):
            out[tag] = sum(self.winding(i, j, px, py) for px, py in self.lifts_in_box(tag, *box))
        return out["w"], out["z"]


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def quadrant_windings(model: CoverModel, a, b, vertex):
    """Winding numbers in the four quadrants around a point of y = 0."""
    x = int(model.X[vertex])
    dx = model.sx // 4
    return [model.winding(a, b, x + sx * dx, sy) for sx in (-1, 1) for sy in (-1, 1)]


def _enumerate(model: CoverModel):
    """Index one bigons, including immersed ones.

    For crossings a < b of the base lift with y = 0, the closed curve
    beta[a -> b] + alpha[x_b -> x_a] (or its reverse) bounds a disk counted
    by the differential when

    * both corners are convex, with quadrant multiplicities (1, 0, 0, 0);
    * the domain has index one, which with two quarter corners means beta
      turns by exactly one half-turn;
    * every multiplicity is non-negative.  The curve only crosses itself
      where beta meets the alpha edge, so sampling the quadrants around
      those points covers every complementary region.
    """
    X, Y = model.X, model.Y
    C = model.crossings
    P = model.row_width
    found = []
    n = len(C)
    for a in range(n):
        vi, si, xi, ti = C[a]
        out_x, out_y = int(X[vi + 1] - X[vi]), int(Y[vi + 1] - Y[vi])
        for b in range(a + 1, n):
            vj, sj, xj, tj = C[b]
            # orientation: +1 when beta[a -> b] + alpha runs counterclockwise
            # around the corners
            in_x, in_y = int(X[vj] - X[vj - 1]), int(Y[vj] - Y[vj - 1])
            c1 = _cross(in_x, in_y, xi - xj, 0)
            c2 = _cross(xi - xj, 0, out_x, out_y)
            if c1 > 0 and c2 > 0:
                sgn = 1
            elif c1 < 0 and c2 < 0:
                sgn = -1
            else:
                continue
            if sgn * (tj - ti) != 1:
                continue
            ok = True
            for v in (vi, vj):
                qs = [sgn * w for w in quadrant_windings(model, vi, vj, v)]
                if sorted(qs) != [0, 0, 0, 1]:
                    ok = False
                    break
            if not ok:
                continue
            lo, hi = min(xi, xj), max(xi, xj)
            for k in range(a + 1, b):
                if lo < C[k][2] < hi:
                    if min(sgn * w for w in quadrant_windings(model, vi, vj, C[k][0])) < 0:
                        ok = False
                        break
            if not ok:
                continue
            n_w, n_z = model.multiplicities(vi, vj)
            n_w, n_z = n_w * sgn, n_z * sgn
            if sgn > 0:
                src, dst, start, stop, step = sj, si, vj, vi, -1
            else:
                src, dst, start, stop, step = si, sj, vi, vj, 1
            shift = -(int(X[start]) // P) * P
            beta = tuple((int(X[k]) + shift, int(Y[k])) for k in range(start, stop + step, step))
            found.append(Bigon(src, dst, n_w, n_z, Witness(beta, (model.sx, model.sy))))
    found.sort(key=lambda g: (g.key, g.witness.beta))
    return tuple(found)


def enumerate_bigons(real: PLRealization, window: int | None = None, check_stability: bool = True):
    """All index-one bigons (immersed allowed) with convex corners, up to deck translation.

    The default window is DEFAULT_WINDOW, raised to :func:`required_window`
    when the lift needs more periods to reach every generator.  Raises
    :class:`WindowInstabilityError` when enlarging the window to
    ``window + 1`` changes the result.
    """
    if window is None:
        window = max(DEFAULT_WINDOW, required_window(real))
    if window < 2:
        raise ValueError("window must be at least 2")
    model = CoverModel(real, window)
    found = _enumerate(model)
    if check_stability:
        bigger = _enumerate(CoverModel(real, window + 1))
        if Counter(g.key for g in found) != Counter(g.key for g in bigger):
            raise WindowInstabilityError(
                f"bigons change between window {window} and {window + 1}; "
                f"{len(model.crossings)} of {real.p} generators visible"
            )
    return found


def required_window(real: PLRealization) -> int:
    """Smallest window whose traced lift sees every generator on y = 0."""
    trace = trace_beta(real)
    return max(2, max(abs(c.y) for c in trace.crossings))


# --- independent audit -----------------------------------------------------


def _winding_horizontal(poly, pt):
    """Winding number via a rightward ray (exact; point must not lie on poly)."""
    x0, y0 = pt
    w = 0
    for (ax, ay), (bx, by) in zip(poly, poly[1:] + poly[:1]):
        cr = (bx - ax) * (y0 - ay) - (x0 - ax) * (by - ay)
        if ay <= y0 < by and cr > 0:
            w += 1
        elif by <= y0 < ay and cr < 0:
            w -= 1
    return w


def _windings(poly, points):
    """Winding numbers of many integer points; points sharing a y reuse one scan."""
    edges = list(zip(poly, poly[1:] + poly[:1]))
    by_row = {}
    for pt in points:
        by_row.setdefault(pt[1], []).append(pt)
    out = {}
    for y0, pts in by_row.items():
        # edges crossing y = y0 upward (+1) or downward (-1)
        hits = [
            (ax, ay, bx, by, 1 if ay < by else -1)
            for (ax, ay), (bx, by) in edges
            if ay <= y0 < by or by <= y0 < ay
        ]
        for pt in pts:
            x0 = pt[0]
            w = 0
            for ax, ay, bx, by, sgn in hits:
                # the crossing lies right of x0 iff the cross product has sign sgn
                cr = (bx - ax) * (y0 - ay) - (x0 - ax) * (by - ay)
                if cr * sgn > 0:
                    w += sgn
            out[pt] = w
    return out


def _turning(points):
    """Total signed turning of a polyline, in half-turns (floating point)."""
    total = 0.0
    for (ax, ay), (bx, by), (cx, cy) in zip(points, points[1:], points[2:]):
        u = (float(bx - ax), float(by - ay))
        v = (float(cx - bx), float(cy - by))
        total += math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1])
    return total / math.pi


def audit_bigon(bigon: Bigon, real: PLRealization) -> dict:
    """Re-verify a bigon from its witness alone.

    Uses exact integer geometry with a horizontal-ray winding count and a
    floating-point turning angle, both independent of the enumeration code.
    Returns the individual verdicts; ``embedded`` is informational, the
    others must all hold.
    """
    d = real.diagram
    dy = Fraction(1, 32 * (max(len(d.bottom), len(d.top)) + 1))
    dx = Fraction(1, 4)
    # one integer lattice holding the witness, the probe offsets and basepoints
    wx, wy = bigon.witness.scale
    base = (real.w_point, real.z_point)
    lx = math.lcm(wx, dx.denominator, *(Fraction(x).denominator for x, _ in base))
    ly = math.lcm(wy, dy.denominator, *(Fraction(y).denominator for _, y in base))
    beta = [(x * (lx // wx), y * (ly // wy)) for x, y in bigon.witness.beta]
    a, b = beta[0], beta[-1]
    poly = beta[::-1]
    on_alpha = a[1] == 0 and b[1] == 0
    offsets = [(int(sx * dx * lx), int(sy * dy * ly)) for sx in (-1, 1) for sy in (-1, 1)]
    lo, hi = min(a[0], b[0]), max(a[0], b[0])
    inner = [
        c
        for c, e in zip(beta[1:-1], beta[2:])
        if c[1] == 0 and lo < c[0] < hi and e[1] != 0
    ]
    xs = [x for x, _ in beta]
    ys = [y for _, y in beta]
    px = real.p * lx
    lifts = {}
    for tag, (bx, by) in zip("wz", base):
        bx, by = int(bx * lx), int(by * ly)
        lifts[tag] = [
            (bx + k * px, by + j * ly)
            for k in range((min(xs) - bx) // px - 1, (max(xs) - bx) // px + 2)
            for j in range((min(ys) - by) // ly - 1, (max(ys) - by) // ly + 2)
        ]
    queries = [(c[0] + ox, c[1] + oy) for c in [a, b] + inner for ox, oy in offsets]
    wind = _windings(poly, queries + lifts["w"] + lifts["z"])

    def quads(pt):
        return sorted(wind[(pt[0] + ox, pt[1] + oy)] for ox, oy in offsets)

    convex = on_alpha and quads(a) == [0, 0, 0, 1] and quads(b) == [0, 0, 0, 1]
    positive = all(min(quads(c)) >= 0 for c in inner)
    # beta leaves and meets alpha vertically, so corners add a quarter each;
    # positive axis scaling keeps that count
    index = _turning(poly) / 2 + 0.5
    counts = {tag: sum(wind[pt] for pt in pts) for tag, pts in lifts.items()}
    return {
        "convex": convex,
        "positive": positive,
        "index-one": abs(index - 1) < 1e-9,
        "multiplicities": (counts["w"], counts["z"]) == (bigon.n_w, bigon.n_z),
        "embedded": not inner,
    }


def audit_ok(bigon: Bigon, real: PLRealization) -> bool:
    v = audit_bigon(bigon, real)
    return all(ok for key, ok in v.items() if key != "embedded")


# --- differentials ---------------------------------------------------------


@dataclass(frozen=True)
class Differential:
    """Boundary table over the two-element field.

    ``entries`` holds (source, target, n_w, n_z) for every entry with odd
    count.  In the hat modes the weights are kept for reference only; parity
    is taken over (source, target).
    """

    mode: str
    p: int
    entries: tuple[tuple[int, int, int, int], ...]

    def rows(self):
        out = defaultdict(list)
        for src, dst, n_w, n_z in self.entries:
            out[src].append((dst, n_w, n_z))
        return {k: sorted(v) for k, v in out.items()}

    def row(self, source):
        return sorted(dst for src, dst, _, _ in self.entries if src == source)

    def pairs(self):
        return {(src, dst) for src, dst, _, _ in self.entries}

    def boundary_map(self):
        """source -> frozenset of targets (parity already applied)."""
        out = {g: set() for g in range(1, self.p + 1)}
        for src, dst, _, _ in self.entries:
            out[src].add(dst)
        return {k: frozenset(v) for k, v in out.items()}

    def square_is_zero(self) -> bool:
        """d o d = 0 over F_2; in full mode separately for each total weight."""
        rows = self.rows()
        acc = Counter()
        for src, row in rows.items():
            for mid, w1, z1 in row:
                for dst, w2, z2 in rows.get(mid, ()):
                    if self.mode == "full":
                        acc[(src, dst, w1 + w2, z1 + z2)] += 1
                    else:
                        acc[(src, dst)] += 1
        return all(c % 2 == 0 for c in acc.values())


def differential(bigons, mode: str, p: int) -> Differential:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "hat-knot":
        kept = [g for g in bigons if g.n_w == 0 and g.n_z == 0]
    elif mode == "hat-s3":
        kept = [g for g in bigons if g.n_w == 0]
    else:
        kept = list(bigons)
    if mode == "full":
        counts = Counter(g.key for g in kept)
        entries = [k for k, c in counts.items() if c % 2]
    else:
        counts = Counter((g.source, g.target) for g in kept)
        weight = {(g.source, g.target): (g.n_w, g.n_z) for g in kept}
        entries = [(s, t) + weight[(s, t)] for (s, t), c in counts.items() if c % 2]
    return Differential(mode, p, tuple(sorted(entries)))
