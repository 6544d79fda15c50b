"""Framed long knots as thickened PL cores, and the little 2-cubes action.

A :class:`FramedTubeKnot` is a long polygonal core in ``[-1, 1] x D^2`` with a
framing integer and a radius per vertex.  :func:`build_tube_map` turns it into
an explicit embedding of ``R x D^2`` (a :class:`TubeMap`): the slab over the
knot's support is wrapped around the core, every other point is fixed.
:func:`kappa` composes rescaled tube maps in order of cube height.
"""
import math
from dataclasses import InitVar, dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import geometry as geo
from .cubes import LittleCube, project
from .invariants import linking_number, long_pair_diagram
from .rational import HALF, ONE, Q, ZERO, q_str, snap, to_q

FRAME_TOLERANCE = Q(1, 256)
PUSHOFF_OFFSET = HALF
SNAP_DENOMINATORS = (2 ** 12, 2 ** 16, 2 ** 20)
MAX_SHRINKS = 8
TWIST_STEP = math.pi / 6
MITRE_INSET = Q(1, 8)
X_AXIS = (ONE, ZERO, ZERO)
STANDARD_FRAME = ((ZERO, ONE, ZERO), (ZERO, ZERO, ONE))


class TubeError(ValueError):
    """A knot or tube violates its invariants, or a model limitation was hit."""


def _point(p):
    p = tuple(to_q(c) for c in p)
    if len(p) != 3:
        raise TubeError(f"expected a 3D point, got {p!r}")
    return p


@dataclass(frozen=True)
class PolyLine:
    vertices: tuple
    long: bool = False

    def __post_init__(self):
        verts = tuple(_point(p) for p in self.vertices)
        if len(verts) < 2:
            raise TubeError("a polyline needs at least two vertices")
        for a, b in zip(verts, verts[1:]):
            if a == b:
                raise TubeError(f"repeated consecutive vertex {a}")
        if self.long and (verts[0] != (-1, 0, 0) or verts[-1] != (1, 0, 0)):
            raise TubeError("a long polyline runs from (-1,0,0) to (1,0,0)")
        object.__setattr__(self, "vertices", verts)

    def __len__(self):
        return len(self.vertices)

    def is_embedded(self):
        return geo.is_embedded(self.vertices)


AXIS = PolyLine(((-1, 0, 0), (1, 0, 0)), long=True)


@dataclass(frozen=True)
class FramedTubeKnot:
    core: PolyLine
    framing: int = 0
    radius: tuple = None
    check: InitVar[bool] = True
    # push-off carried through a composition, if any; not part of the value
    pushoff: PolyLine = field(default=None, compare=False, repr=False)

    def __post_init__(self, check):
        core = self.core if isinstance(self.core, PolyLine) else PolyLine(self.core, long=True)
        if not core.long:
            raise TubeError("the core of a framed long knot must be long")
        radius = self.radius
        if radius is None:
            radius = (ONE,) * len(core)
        radius = tuple(to_q(r) for r in radius)
        if len(radius) != len(core):
            raise TubeError("radius profile length differs from core length")
        if radius[0] != 1 or radius[-1] != 1:
            raise TubeError("radius must be 1 at both ends")
        if any(not 0 < r <= 1 for r in radius):
            raise TubeError("radii must lie in (0, 1]")
        if self.framing and _trivial(core.vertices, radius):
            # a framed straight core needs somewhere to put its twist: give it
            # a thinner middle so the support stays inside [-1, 1]
            x0, x1 = core.vertices[0][0], core.vertices[-1][0]
            mid = [(x0 + (x1 - x0) * t, ZERO, ZERO) for t in (Q(1, 4), Q(3, 4))]
            core = PolyLine((core.vertices[0], *mid, core.vertices[-1]), long=True)
            radius = (ONE, HALF, HALF, ONE)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "framing", int(self.framing))
        if check:
            for x, y, z in core.vertices:
                if not (-1 <= x <= 1 and y * y + z * z <= 1):
                    raise TubeError(f"core vertex {(x, y, z)} leaves [-1,1] x D^2")
            if not core.is_embedded():
                raise TubeError("core is not embedded")

    @property
    def vertices(self):
        return self.core.vertices


def unknot(framing=0):
    return FramedTubeKnot(AXIS, framing, (ONE, ONE))


# Cross sections are the square [-1, 1]^2, fanned into four triangles around
# the centre.  Vertex 0 is the centre, 1..4 the corners; every triangle lists
# its vertices in increasing order so that neighbouring prisms cut their
# shared faces along the same diagonals.
SQUARE = ((ZERO, ZERO), (ONE, ONE), (-ONE, ONE), (-ONE, -ONE), (ONE, -ONE))
FAN = ((0, 1, 4), (0, 1, 2), (0, 2, 3), (0, 3, 4))


def _section(c, r, u, v):
    return tuple(
        tuple(ci + r * (y * ui + z * vi) for ci, ui, vi in zip(c, u, v))
        for y, z in SQUARE)


def _fan_triangle(y, z):
    if y >= abs(z):
        return FAN[0]
    if z >= abs(y):
        return FAN[1]
    if -y >= abs(z):
        return FAN[2]
    return FAN[3]


def _barycentric(tri, y, z):
    _, i, j = tri
    (py, pz), (qy, qz) = SQUARE[i], SQUARE[j]
    det = py * qz - pz * qy
    a = (y * qz - z * qy) / det
    b = (py * z - pz * y) / det
    return (1 - a - b, a, b)


def _staircase(lam, mu):
    """Tetrahedron weights of a point at height *lam* over barycentric *mu*.

    The prism over a triangle ``(0, 1, 2)`` is cut into the tetrahedra
    ``a0 a1 a2 b2``, ``a0 a1 b1 b2`` and ``a0 b0 b1 b2`` (``a`` bottom,
    ``b`` top).  Returns ``(bottom weights, top weights)``.
    """
    m0, m1, m2 = mu
    if lam <= m2:
        return (m0, m1, m2 - lam), (ZERO, ZERO, lam)
    if lam <= m1 + m2:
        return (m0, m1 + m2 - lam, ZERO), (ZERO, lam - m2, m2)
    return (1 - lam, ZERO, ZERO), (lam - m1 - m2, m1, m2)


@dataclass(frozen=True)
class TubeMap:
    """A piecewise-affine embedding of ``R x [-1, 1]^2`` wrapping a core.

    ``params`` are breakpoints ``s_v`` along the line factor.  The cross
    section over ``s_v`` is sent to the parallelogram ``c_v + r_v (y u_v +
    z v_v)``; between two breakpoints the map is the affine interpolation on
    a fixed triangulation of the prism, so straight segments cut at the
    simplex walls map to straight segments exactly.  The centre line maps
    onto the core.  Points with ``s`` outside ``[params[lo], params[hi]]``
    are fixed.
    """
    source: FramedTubeKnot
    points: tuple
    params: tuple
    u: tuple
    v: tuple
    radius: tuple
    lo: int
    hi: int
    pushoff_linking: int = field(default=0)

    @property
    def support(self):
        if self.lo >= self.hi:
            return None
        return (self.params[self.lo], self.params[self.hi])

    def _locate(self, s):
        lo, hi = self.lo, self.hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.params[mid] <= s:
                lo = mid
            else:
                hi = mid
        return lo

    @cached_property
    def _sections(self):
        return [_section(c, r, u, v)
                for c, r, u, v in zip(self.points, self.radius, self.u, self.v)]

    def section(self, k):
        """Images of the five section vertices over breakpoint *k*."""
        return self._sections[k]

    def _image(self, k, lam, y, z):
        tri = _fan_triangle(y, z)
        bottom, top = _staircase(lam, _barycentric(tri, y, z))
        sa, sb = self.section(k), self.section(k + 1)
        out = [ZERO, ZERO, ZERO]
        for weights, sec in ((bottom, sa), (top, sb)):
            for w, idx in zip(weights, tri):
                if w:
                    p = sec[idx]
                    for a in range(3):
                        out[a] += w * p[a]
        return tuple(out)

    def evaluate(self, point):
        """Image of a point together with the local radius factor."""
        s, y, z = point
        sup = self.support
        if sup is None or not sup[0] < s < sup[1]:
            return point, ONE
        k = self._locate(s)
        lam = (s - self.params[k]) / (self.params[k + 1] - self.params[k])
        r = self.radius[k] + lam * (self.radius[k + 1] - self.radius[k])
        return self._image(k, lam, y, z), r

    def cuts(self, a, b):
        """Parameters in (0, 1) where segment ``ab`` (inside one prism) meets
        a wall of the triangulation."""
        k = self._locate((a[0] + b[0]) / 2)
        s0, s1 = self.params[k], self.params[k + 1]

        def coords(t):
            p = geo.lerp(a, b, t)
            return (p[0] - s0) / (s1 - s0), p[1], p[2]

        ts = {ZERO, ONE}
        for sign in (1, -1):
            ts.update(_roots(a[1] - sign * a[2], b[1] - sign * b[2]))
        ts = sorted(ts)
        out = set()
        for t0, t1 in zip(ts, ts[1:]):
            l0, y0, z0 = coords(t0)
            l1, y1, z1 = coords(t1)
            lm, ym, zm = coords((t0 + t1) / 2)
            tri = _fan_triangle(ym, zm)
            m0 = _barycentric(tri, y0, z0)
            m1 = _barycentric(tri, y1, z1)
            for g0, g1 in ((l0 - m0[2], l1 - m1[2]), (l0 - m0[1] - m0[2], l1 - m1[1] - m1[2])):
                out.update(t0 + (t1 - t0) * r for r in _roots(g0, g1))
        out.update(ts[1:-1])
        return sorted(out)


def _roots(g0, g1):
    """Root in (0, 1) of the linear function with end values *g0*, *g1*."""
    if (g0 < 0 < g1) or (g1 < 0 < g0):
        return [g0 / (g0 - g1)]
    return []


# -- rescaling ----------------------------------------------------------------

def mu_rescale(cube, f):
    """Conjugate *f* by the 1-cube ``t -> a t + b`` acting on the line factor.

    Core x-coordinates are mapped affinely, interior radii shrink by ``a``;
    the ends keep radius 1 so the tube still meets the identity outside the
    new support ``[b - a, b + a]``.
    """
    if not isinstance(cube, LittleCube):
        cube = LittleCube(((to_q(cube[0]), to_q(cube[1])),))
    if cube.dimension != 1:
        raise TubeError("mu_rescale takes a little 1-cube")
    (a, b), = cube.axes
    verts = [(a * x + b, y, z) for x, y, z in f.vertices]
    radii = [ONE] + [a * r for r in f.radius[1:-1]] + [ONE]
    if verts[0][0] > -1:
        verts.insert(0, (-ONE, ZERO, ZERO))
        radii.insert(0, ONE)
    if verts[-1][0] < 1:
        verts.append((ONE, ZERO, ZERO))
        radii.append(ONE)
    return FramedTubeKnot(PolyLine(verts, long=True), f.framing, radii, check=False)


# -- tube construction --------------------------------------------------------

def _on_axis(p):
    return p[1] == 0 and p[2] == 0


def support_indices(f):
    """Indices ``(lo, hi)`` bounding the part of the core that is not trivial.

    Outside, the core runs along the x-axis with radius 1 and the tube map is
    the identity.  ``lo >= hi`` means the whole knot is trivial.
    """
    verts, radius = f.vertices, f.radius
    m = len(verts) - 1
    lo = 0
    while (lo < m and _on_axis(verts[lo + 1]) and radius[lo + 1] == 1
           and verts[lo + 1][0] > verts[lo][0]):
        lo += 1
    hi = m
    while (hi > 0 and _on_axis(verts[hi - 1]) and radius[hi - 1] == 1
           and verts[hi - 1][0] < verts[hi][0]):
        hi -= 1
    if lo >= hi:
        return m, m
    return lo, hi


def _trivial(verts, radius):
    return all(_on_axis(p) for p in verts) and all(r == 1 for r in radius) and all(
        b[0] > a[0] for a, b in zip(verts, verts[1:]))


def _l1(p, q):
    return sum((abs(a - b) for a, b in zip(p, q)), ZERO)


def _params(verts, lo, hi):
    params = [p[0] for p in verts]
    total = sum((_l1(verts[k], verts[k + 1]) for k in range(lo, hi)), ZERO)
    x0, x1 = verts[lo][0], verts[hi][0]
    if x1 <= x0:
        raise TubeError("support of the knot is not an increasing x-interval")
    acc = ZERO
    for k in range(lo + 1, hi):
        acc += _l1(verts[k - 1], verts[k])
        params[k] = x0 + (x1 - x0) * acc / total
    return params


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _reflect(vec, axis):
    c = axis @ axis
    return vec - (2.0 / c) * (axis @ vec) * axis


def _rmf(points, tangents, u0):
    """Double-reflection rotation-minimizing frame (first vectors only)."""
    us = [u0]
    for i in range(len(points) - 1):
        v1 = points[i + 1] - points[i]
        u_l = _reflect(us[-1], v1)
        t_l = _reflect(tangents[i], v1)
        v2 = tangents[i + 1] - t_l
        u_n = _reflect(u_l, v2) if v2 @ v2 > 1e-30 else u_l
        u_n = u_n - (u_n @ tangents[i + 1]) * tangents[i + 1]
        us.append(_unit(u_n))
    return us


def _rotate(u, t, theta):
    w = np.cross(t, u)
    return math.cos(theta) * u + math.sin(theta) * w


def _circle_point(theta, den):
    """Exact rational point on the unit circle near angle *theta*."""
    half = theta / 2
    if abs(math.cos(half)) < 1e-9:
        return (-ONE, ZERO)
    t = snap(math.tan(half), den)
    n = 1 + t * t
    return ((1 - t * t) / n, 2 * t / n)


def _snap_vec(vec, den):
    return tuple(snap(float(c), den) for c in vec)


def _frame_ok(u, v, t):
    tol2 = FRAME_TOLERANCE ** 2
    tt = geo.dot(t, t)
    uu, vv = geo.dot(u, u), geo.dot(v, v)
    return (geo.dot(u, t) ** 2 <= tol2 * tt and geo.dot(v, t) ** 2 <= tol2 * tt
            and geo.dot(u, v) ** 2 <= tol2 and (uu - 1) ** 2 <= tol2
            and (vv - 1) ** 2 <= tol2)


def _vertex_tangents(fpts):
    """Unit tangents at the vertices: the x-direction at both ends, the
    bisector of the two incident segments (a mitre) in between."""
    dirs = [_unit(b - a) for a, b in zip(fpts, fpts[1:])]
    ex = np.array([1.0, 0.0, 0.0])
    tangents = [ex]
    for d_in, d_out in zip(dirs, dirs[1:]):
        mid = d_in + d_out
        if mid @ mid < 1e-6:
            raise TubeError("core folds back on itself; cannot mitre the tube")
        tangents.append(_unit(mid))
    tangents.append(ex)
    return tangents


def _twist_segment(f, lo, hi):
    """First support segment that runs along the axis inside the tube.

    Twisting there only rotates a thin part of the tube, so curves passing
    through the fat ends are never swung outside the unit disk.
    """
    verts, radius = f.vertices, f.radius
    for k in range(lo, hi):
        a, b = verts[k], verts[k + 1]
        if _on_axis(a) and _on_axis(b) and b[0] > a[0] and radius[k] < 1 and radius[k + 1] < 1:
            return k
    return lo


def _refine(f, lo, hi, n_twist):
    """Support vertices with radii, the segment of each piece, and the twist run.

    Every segment gets two extra vertices near its ends, so that each mitred
    section is followed by a section square to the segment: a tilt and a
    twist never happen across the same prism.  The twist segment has its
    middle part cut into *n_twist* pieces instead.
    """
    verts, radius = f.vertices, f.radius
    if verts[lo + 1][0] <= verts[lo][0] or verts[hi][0] <= verts[hi - 1][0]:
        raise TubeError("core must enter and leave its support moving in +x")
    tw = _twist_segment(f, lo, hi)
    pts, radii, segs = [], [], []
    start = None
    for k in range(lo, hi):
        a, b = verts[k], verts[k + 1]
        if k == tw:
            start = len(pts) + 1
            span = 1 - 2 * MITRE_INSET
            ts = [ZERO] + [MITRE_INSET + span * Q(j, n_twist) for j in range(n_twist + 1)]
        else:
            ts = [ZERO, MITRE_INSET, 1 - MITRE_INSET]
        for t in ts:
            pts.append(geo.lerp(a, b, t))
            radii.append(radius[k] + t * (radius[k + 1] - radius[k]))
            segs.append(k)
    pts.append(verts[hi])
    radii.append(radius[hi])
    return pts, radii, segs, start


def _frames(pts, theta, start, n_twist):
    """Frames at the refined support vertices.

    The frames at both ends are standard.  The transported frame is rotated
    over the pieces ``start .. start + n_twist`` so that it arrives standard
    at the far end, plus *theta* of extra twist.
    """
    p0, p1 = pts[start], pts[start + n_twist]
    fpts = np.array([[float(c) for c in p] for p in pts])
    tangents = _vertex_tangents(fpts)
    us = _rmf(list(fpts), tangents, np.array([0.0, 1.0, 0.0]))
    u_end = us[-1]
    alpha = math.atan2(u_end[2], u_end[1])
    total = theta - alpha
    weights = [ZERO if i <= start else ONE if i >= start + n_twist else Q(i - start, n_twist)
               for i in range(len(pts))]
    twist_axis_aligned = _on_axis(p0) and _on_axis(p1)
    for den in SNAP_DENOMINATORS:
        frames = []
        ok = True
        for i, w in enumerate(weights):
            if i == 0 or i == len(pts) - 1:
                frames.append(STANDARD_FRAME)
                continue
            ang = total * float(w)
            if twist_axis_aligned and start <= i <= start + n_twist:
                c, s = _circle_point(ang, den)
                frames.append(((ZERO, c, s), (ZERO, -s, c)))
                continue
            t = tangents[i]
            u = _rotate(us[i], t, ang)
            v = np.cross(t, u)
            su, sv = _snap_vec(u, den), _snap_vec(v, den)
            if not _frame_ok(su, sv, _snap_vec(t, 2 ** 24)):
                ok = False
                break
            frames.append((su, sv))
        if ok:
            return frames
    raise TubeError("frame snapping could not certify the orthogonality bound")


def _frame_norm2(frame):
    u, v = frame
    return geo.dot(u, u) + geo.dot(v, v)


def _det3(a, b, c):
    return geo.dot(a, geo.cross(b, c))


_DOMAIN_SIGN = {}


def _domain_sign(tri, which):
    key = (tri, which)
    if key not in _DOMAIN_SIGN:
        verts = _tet_vertices(tri, which)
        pts = [(ONE if top else ZERO, *SQUARE[i]) for top, i in verts]
        e = [geo.sub(p, pts[0]) for p in pts[1:]]
        _DOMAIN_SIGN[key] = 1 if _det3(*e) > 0 else -1
    return _DOMAIN_SIGN[key]


def _tet_vertices(tri, which):
    a0, a1, a2 = ((False, i) for i in tri)
    b0, b1, b2 = ((True, i) for i in tri)
    return ((a0, a1, a2, b2), (a0, a1, b1, b2), (a0, b0, b1, b2))[which]


def _prism_positive(sa, sb):
    """Every tetrahedron of the prism between sections *sa*, *sb* keeps its
    orientation under the map."""
    for tri in FAN:
        for which in range(3):
            pts = [(sb if top else sa)[i] for top, i in _tet_vertices(tri, which)]
            e = [geo.sub(p, pts[0]) for p in pts[1:]]
            d = _det3(*e)
            if d == 0 or (d > 0) != (_domain_sign(tri, which) > 0):
                return False
    return True


def _frame_norm2(frame):
    u, v = frame
    return geo.dot(u, u) + geo.dot(v, v)


def _tube_certificate(points, frames, radius, segs=None):
    """Conservative embedding certificate for the piecewise-affine tube.

    Checks that every simplex keeps its orientation, that consecutive
    prisms lie on opposite sides of their common section, and that prisms
    over non-adjacent segments are far apart compared to their radii.
    Pieces cut from one straight segment (``segs`` gives the segment of each
    piece) are separated by the square sections between them, so pairs
    among them need no distance check.
    """
    n = len(points) - 1
    sections = [_section(c, r, u, v) for c, (u, v), r in zip(points, frames, radius)]
    for k in range(n):
        if not _prism_positive(sections[k], sections[k + 1]):
            return False
    for k in range(1, n):
        normal = geo.cross(*frames[k])
        c = points[k]
        if any(geo.dot(geo.sub(p, c), normal) >= 0 for p in sections[k - 1]):
            return False
        if any(geo.dot(geo.sub(p, c), normal) <= 0 for p in sections[k + 1]):
            return False
    if n < 3:
        return True
    reach = []
    boxes = []
    for k in range(n):
        rmax = max(radius[k], radius[k + 1])
        m2 = max(_frame_norm2(frames[k]), _frame_norm2(frames[k + 1]))
        reach.append((rmax, m2))
        # each prism lies in the convex hull of its ten section vertices
        pts = sections[k] + sections[k + 1]
        boxes.append(geo.bbox(pts))
    for i, j in geo.candidate_pairs(boxes):
        if j == i + 1 or (segs is not None and segs[i] == segs[j]):
            continue
        (ri, mi), (rj, mj) = reach[i], reach[j]
        d2 = geo.segment_dist2(points[i], points[i + 1], points[j], points[j + 1])
        # corners sit at distance r |u +- v| <= r sqrt(2 (|u|^2 + |v|^2))
        if d2 <= 2 * (ri + rj) ** 2 * max(mi, mj):
            return False
    return True


def _assemble(f, lo, hi, pts, frames, radius_support):
    verts = f.vertices
    points = tuple(verts[:lo]) + tuple(pts) + tuple(verts[hi + 1:])
    n_pre = lo
    params_full = _params(points, n_pre, n_pre + len(pts) - 1)
    u = [STANDARD_FRAME[0]] * n_pre + [fr[0] for fr in frames] + [STANDARD_FRAME[0]] * (len(verts) - hi - 1)
    v = [STANDARD_FRAME[1]] * n_pre + [fr[1] for fr in frames] + [STANDARD_FRAME[1]] * (len(verts) - hi - 1)
    radius = tuple(f.radius[:lo]) + tuple(radius_support) + tuple(f.radius[hi + 1:])
    return TubeMap(f, points, tuple(params_full), tuple(u), tuple(v), radius,
                   n_pre, n_pre + len(pts) - 1)


def pushoff(tube):
    line = PolyLine(((-1, PUSHOFF_OFFSET, 0), (1, PUSHOFF_OFFSET, 0)), long=False)
    return apply_tube(tube, line)


def _measure(tube):
    core = tube.points
    push = pushoff(tube).vertices
    if not geo.polylines_disjoint(core, push):
        raise TubeError("push-off meets the core")
    return linking_number(long_pair_diagram(core, push))


@lru_cache(maxsize=4096)
def build_tube_map(f):
    """Frame the core of *f* so that its push-off links it ``f.framing`` times."""
    lo, hi = support_indices(f)
    if lo >= hi:
        return TubeMap(f, f.vertices, tuple(p[0] for p in f.vertices),
                       (STANDARD_FRAME[0],) * len(f.vertices), (STANDARD_FRAME[1],) * len(f.vertices),
                       f.radius, lo, hi, 0)

    def attempt(turns):
        theta = 2 * math.pi * turns
        n_twist = max(2, math.ceil((abs(theta) + 2 * math.pi) / TWIST_STEP))
        pts, radii, segs, start = _refine(f, lo, hi, n_twist)
        return pts, _frames(pts, theta, start, n_twist), radii, segs

    def shrink(radius, scale):
        return [radius[0]] + [r * scale for r in radius[1:-1]] + [radius[-1]]

    pts, frames, radius0, segs = attempt(0)
    scale = ONE
    for _ in range(MAX_SHRINKS + 1):
        if _tube_certificate(pts, frames, shrink(radius0, scale), segs):
            break
        scale /= 2
    else:
        raise TubeError("tube radii could not be certified after shrinking")

    tube0 = _assemble(f, lo, hi, pts, frames, shrink(radius0, scale))
    link0 = _measure(tube0)
    turns = f.framing - link0
    if turns == 0:
        return _with_link(tube0, link0)
    # one full turn of twist changes the linking number by one; which sign
    # of rotation does so depends on the handedness of the frame
    for sign in (1, -1):
        pts, frames, radius0, segs = attempt(sign * turns)
        radius = shrink(radius0, scale)
        if not _tube_certificate(pts, frames, radius, segs):
            continue
        tube = _assemble(f, lo, hi, pts, frames, radius)
        link = _measure(tube)
        if link == f.framing:
            return _with_link(tube, link)
    raise TubeError("could not realize the requested framing")


def _with_link(tube, link):
    return TubeMap(tube.source, tube.points, tube.params, tube.u, tube.v,
                   tube.radius, tube.lo, tube.hi, link)


# -- applying tubes -----------------------------------------------------------

def apply_tube(tube, curve, radii=None):
    """Push *curve* through *tube*.  Returns a PolyLine (and radii if given).

    Segments are cut where they cross a breakpoint of the tube and then at
    every wall of the triangulation, so the image is exact: each piece is
    mapped affinely.
    """
    verts = curve.vertices if isinstance(curve, PolyLine) else tuple(curve)
    for x, y, z in verts:
        if y * y + z * z > 1:
            raise TubeError("curve leaves R x D^2 through the side of the support box")
    sup = tube.support
    track = radii is not None
    if radii is None:
        radii = (ONE,) * len(verts)
    if sup is None:
        out = PolyLine(verts, long=getattr(curve, "long", False))
        return (out, tuple(radii)) if track else out
    breaks = tube.params[tube.lo:tube.hi + 1]
    s_lo, s_hi = sup
    pts, rs = [], []

    def emit(p, r):
        q, factor = tube.evaluate(p)
        if pts and pts[-1] == q:
            return
        pts.append(q)
        rs.append(r * factor)

    emit(verts[0], radii[0])
    for k in range(len(verts) - 1):
        a, b = verts[k], verts[k + 1]
        ra, rb = radii[k], radii[k + 1]
        xa, xb = a[0], b[0]
        if max(xa, xb) <= s_lo or min(xa, xb) >= s_hi:
            emit(b, rb)
            continue
        lams = [ZERO]
        if xa != xb:
            lo_x, hi_x = min(xa, xb), max(xa, xb)
            lams += sorted((s - xa) / (xb - xa) for s in breaks if lo_x < s < hi_x)
        lams.append(ONE)
        for l0, l1 in zip(lams, lams[1:]):
            p, q = geo.lerp(a, b, l0), geo.lerp(a, b, l1)
            if s_lo < (p[0] + q[0]) / 2 < s_hi:
                for t in tube.cuts(p, q):
                    lam = l0 + t * (l1 - l0)
                    emit(geo.lerp(a, b, lam), ra + lam * (rb - ra))
            emit(q, ra + l1 * (rb - ra))
    out = PolyLine(pts, long=getattr(curve, "long", False))
    return (out, tuple(rs)) if track else out


# -- the little 2-cubes action --------------------------------------------------

class KappaError(TubeError):
    pass


def _check_order(order, t):
    if sorted(order) != list(range(len(t))):
        raise KappaError("order must be a permutation of the cube indices")
    for i, j in zip(order, order[1:]):
        if t[i] > t[j]:
            raise KappaError("order does not sort the cube heights")


def kappa(config, knots, order=None, measure_framing=True):
    """Compose the rescaled knots in order of increasing cube height.

    The composite is ``T_{order[0]} o ... o T_{order[-1]}`` applied to the
    straight axis, so the highest cube acts first.  *order* may be any
    permutation sorting the heights; ties are broken by index by default.
    With *measure_framing* the push-off is carried along and the framing of
    the result is its measured linking number with the core; otherwise the
    framing is the sum of the inputs' framings.
    """
    knots = list(knots)
    if config.dimension != 2:
        raise KappaError("kappa acts through little 2-cubes")
    if len(knots) != len(config):
        raise KappaError(f"{len(config)} cubes but {len(knots)} knots")
    if not knots:
        return unknot()
    proj = project(config)
    if order is None:
        order = sorted(range(len(knots)), key=lambda i: proj.t[i])
    order = list(order)
    _check_order(order, proj.t)
    curve, radii = AXIS, (ONE, ONE)
    push = PolyLine(((-1, PUSHOFF_OFFSET, 0), (1, PUSHOFF_OFFSET, 0)))
    for i in reversed(order):
        tube = build_tube_map(mu_rescale(proj.pi[i], knots[i]))
        curve, radii = apply_tube(tube, curve, radii)
        if measure_framing:
            push = apply_tube(tube, push)
        bad = geo.first_self_intersection(curve.vertices)
        if bad is not None:
            raise KappaError(f"composite core stops being embedded at cube {i} "
                             f"(segments {bad})")
    if measure_framing:
        if not geo.polylines_disjoint(curve.vertices, push.vertices):
            raise KappaError("composite push-off meets the core")
        framing = linking_number(long_pair_diagram(curve.vertices, push.vertices))
    else:
        framing = sum(k.framing for k in knots)
    return FramedTubeKnot(curve, framing, radii, check=False,
                          pushoff=push if measure_framing else None)


# -- JSON -----------------------------------------------------------------------

def knot_to_json(f):
    return {
        "schema": "cubeknot/1",
        "core": [[q_str(c) for c in p] for p in f.vertices],
        "framing": f.framing,
        "radius": [q_str(r) for r in f.radius],
        **({"pushoff": [[q_str(c) for c in p] for p in f.pushoff.vertices]}
           if f.pushoff is not None else {}),
    }


def knot_from_json(obj):
    try:
        core = PolyLine(tuple(tuple(to_q(str(c)) for c in p) for p in obj["core"]), long=True)
        radius = obj.get("radius")
        if radius is not None:
            radius = tuple(to_q(str(r)) for r in radius)
        framing = obj.get("framing", 0)
        if isinstance(framing, bool) or not isinstance(framing, int):
            raise TubeError("framing must be an integer")
        push = obj.get("pushoff")
        if push is not None:
            push = PolyLine(tuple(tuple(to_q(str(c)) for c in p) for p in push))
        return FramedTubeKnot(core, framing, radius, pushoff=push)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, TubeError):
            raise
        raise TubeError(f"malformed knot JSON: {exc}") from exc
