"""Exact predicates on rational points and segments.

Points are tuples of ``mpq``.  Every answer is decided by the sign of an
exact rational expression.  Floating point is used only to discard pairs
that are apart by a wide margin before the exact tests run.
"""
import numpy as np

from .rational import ONE, ZERO


def sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def scale(c, p):
    return tuple(c * a for a in p)


def dot(p, q):
    return sum((a * b for a, b in zip(p, q)), ZERO)


def cross(p, q):
    return (p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0])


def lerp(p, q, t):
    return tuple(a + t * (b - a) for a, b in zip(p, q))


def orient2d(a, b, c):
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def on_segment2d(p, a, b):
    """True when *p* lies on the closed segment ``ab`` (2D)."""
    if orient2d(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect3d(p0, p1, q0, q1):
    """Closed-segment intersection test in 3-space."""
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    r = sub(q0, p0)
    n = cross(d1, d2)
    if n != (ZERO, ZERO, ZERO):
        if dot(r, n) != 0:
            return False
        nn = dot(n, n)
        t = dot(cross(r, d2), n)
        u = dot(cross(r, d1), n)
        return 0 <= t <= nn and 0 <= u <= nn
    if cross(r, d1) != (ZERO, ZERO, ZERO):
        return False
    dd = dot(d1, d1)
    t0 = dot(r, d1)
    t1 = dot(sub(q1, p0), d1)
    return max(min(t0, t1), ZERO) <= min(max(t0, t1), dd)


def adjacent_fold(p0, p1, p2):
    """Segments ``p0p1`` and ``p1p2`` overlap beyond their shared vertex."""
    d1 = sub(p1, p0)
    d2 = sub(p2, p1)
    return cross(d1, d2) == (ZERO, ZERO, ZERO) and dot(d1, d2) < 0


def _clamp01(t):
    return ZERO if t < 0 else ONE if t > 1 else t


def point_segment_dist2(p, a, b):
    d = sub(b, a)
    dd = dot(d, d)
    t = _clamp01(dot(sub(p, a), d) / dd) if dd else ZERO
    e = sub(p, lerp(a, b, t))
    return dot(e, e)


def segment_dist2(p0, p1, q0, q1):
    """Exact squared distance between two closed 3D segments."""
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    r = sub(p0, q0)
    a = dot(d1, d1)
    e = dot(d2, d2)
    b = dot(d1, d2)
    c = dot(d1, r)
    f = dot(d2, r)
    den = a * e - b * b
    if den > 0:
        s = (b * f - c * e) / den
        t = (a * f - b * c) / den
        if 0 <= s <= 1 and 0 <= t <= 1:
            w = sub(add(p0, scale(s, d1)), add(q0, scale(t, d2)))
            return dot(w, w)
    return min(
        point_segment_dist2(p0, q0, q1),
        point_segment_dist2(p1, q0, q1),
        point_segment_dist2(q0, p0, p1),
        point_segment_dist2(q1, p0, p1),
    )


def bbox(points):
    return tuple(zip(*((min(c), max(c)) for c in zip(*points))))


def boxes_overlap(b1, b2):
    """Closed axis-aligned boxes ``((mins), (maxs))`` share a point."""
    return all(lo1 <= hi2 and lo2 <= hi1
               for lo1, hi1, lo2, hi2 in zip(b1[0], b1[1], b2[0], b2[1]))


_BOX_PAD = 1e-9
_PAIR_BLOCK = 2_000_000


def _float_array(points):
    return np.array([[float(c) for c in p] for p in points], dtype=float).reshape(len(points), -1)


def box_pairs(lo, hi):
    """Index arrays ``(I, J)``, ``I < J``, of float boxes that overlap (sweep on axis 0)."""
    n = len(lo)
    if n < 2:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    order = np.argsort(lo[:, 0], kind="stable")
    slo, shi = lo[order], hi[order]
    end = np.searchsorted(slo[:, 0], shi[:, 0], side="right")
    counts = np.maximum(end - np.arange(1, n + 1), 0)
    out_i, out_j = [], []
    k = 0
    while k < n:
        # rows in blocks so that the pair arrays stay bounded
        stop = k + 1
        total = counts[k]
        while stop < n and total + counts[stop] <= _PAIR_BLOCK:
            total += counts[stop]
            stop += 1
        c = counts[k:stop]
        ii = np.repeat(np.arange(k, stop), c)
        offs = np.arange(ii.size) - np.repeat(np.cumsum(c) - c, c)
        jj = ii + 1 + offs
        ok = np.all((slo[ii, 1:] <= shi[jj, 1:]) & (slo[jj, 1:] <= shi[ii, 1:]), axis=1)
        a, b = order[ii[ok]], order[jj[ok]]
        out_i.append(np.minimum(a, b))
        out_j.append(np.maximum(a, b))
        k = stop
    return np.concatenate(out_i), np.concatenate(out_j)


def candidate_pairs(boxes):
    """Index pairs ``i < j`` whose closed boxes may overlap.

    Boxes are compared in floating point after padding each side outward,
    so the filter can only over-report; callers decide exactly.
    """
    if len(boxes) < 2:
        return []
    lo = _float_array([b[0] for b in boxes]) - _BOX_PAD
    hi = _float_array([b[1] for b in boxes]) + _BOX_PAD
    I, J = box_pairs(lo, hi)
    return list(zip(I.tolist(), J.tolist()))


def _segment_candidates(p0, p1, q0, q1):
    """Float filter for segment pairs (rows of the four endpoint arrays).

    Drops pairs that are certainly apart: disjoint padded boxes, or clearly
    non-coplanar supporting lines.  The bound on the triple product is far
    above the rounding error of converting the exact inputs to floats.
    """
    d1, d2, r = p1 - p0, q1 - q0, q0 - p0
    triple = np.einsum("ij,ij->i", r, np.cross(d1, d2))
    size = np.abs(r).sum(1) + np.abs(d1).sum(1) + np.abs(d2).sum(1)
    mag = np.abs(np.hstack([p0, p1, q0, q1])).max(1) + 1
    # relative error of the products plus absolute error of the differences
    bound = 1e-9 * size ** 3 + 1e-12 * mag * size ** 2
    return np.abs(triple) <= bound + 1e-300


def _orient_filter(a, b, c):
    """Float orientations with a bound well above their rounding error."""
    o = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    size = np.abs(b - a).sum(1) + np.abs(c - a).sum(1)
    mag = np.abs(np.hstack([a, b, c])).max(1) + 1
    return o, 1e-9 * size ** 2 + 1e-12 * mag * size + 1e-300


def segments_apart2d(a0, a1, b0, b1):
    """Rows where the plane segments certainly do not meet: both ends of one
    lie strictly on one side of the other's line, by a margin the float
    rounding cannot account for."""
    o1, e1 = _orient_filter(a0, a1, b0)
    o2, e2 = _orient_filter(a0, a1, b1)
    o3, e3 = _orient_filter(b0, b1, a0)
    o4, e4 = _orient_filter(b0, b1, a1)
    return (((o1 > e1) & (o2 > e2)) | ((o1 < -e1) & (o2 < -e2))
            | ((o3 > e3) & (o4 > e4)) | ((o3 < -e3) & (o4 < -e4)))


def _pairs_to_check(segs_a, segs_b=None):
    """Candidate segment pairs that the float filter cannot rule out."""
    fa0, fa1 = _float_array([s[0] for s in segs_a]), _float_array([s[1] for s in segs_a])
    if segs_b is None:
        f0, f1 = fa0, fa1
    else:
        fb0, fb1 = _float_array([s[0] for s in segs_b]), _float_array([s[1] for s in segs_b])
        f0, f1 = np.vstack([fa0, fb0]), np.vstack([fa1, fb1])
    lo = np.minimum(f0, f1) - _BOX_PAD
    hi = np.maximum(f0, f1) + _BOX_PAD
    I, J = box_pairs(lo, hi)
    if segs_b is not None:
        na = len(segs_a)
        keep = (I < na) & (J >= na)
        I, J = I[keep], J[keep]
    keep = _segment_candidates(f0[I], f1[I], f0[J], f1[J])
    I, J = I[keep], J[keep]
    # segments that meet in space meet in every coordinate shadow
    for axes in ((0, 1), (0, 2), (1, 2)):
        a0, a1 = f0[I][:, axes], f1[I][:, axes]
        b0, b1 = f0[J][:, axes], f1[J][:, axes]
        keep = ~segments_apart2d(a0, a1, b0, b1)
        I, J = I[keep], J[keep]
    return I.tolist(), J.tolist()


def polyline_segments(points, closed=False):
    segs = list(zip(points, points[1:]))
    if closed:
        segs.append((points[-1], points[0]))
    return segs


def first_self_intersection(points, closed=False):
    """``None`` if the polyline is embedded, else an offending segment pair."""
    n = len(points)
    for i in range(n - 1):
        if points[i] == points[i + 1]:
            return (i, i)
    if closed and points[0] == points[-1]:
        return (n - 1, n - 1)
    segs = polyline_segments(points, closed)
    m = len(segs)
    for i in range(m - 1):
        if adjacent_fold(segs[i][0], segs[i][1], segs[i + 1][1]):
            return (i, i + 1)
    if closed and m > 2 and adjacent_fold(segs[-1][0], segs[-1][1], segs[0][1]):
        return (m - 1, 0)
    if m < 3:
        return None
    for i, j in sorted(zip(*_pairs_to_check(segs))):
        if j == i + 1 or (closed and i == 0 and j == m - 1):
            continue
        if segments_intersect3d(*segs[i], *segs[j]):
            return (i, j)
    return None


def is_embedded(points, closed=False):
    return first_self_intersection(points, closed) is None


def polylines_disjoint(a, b, closed=False):
    sa = polyline_segments(a, closed)
    sb = polyline_segments(b, closed)
    if not sa or not sb:
        return True
    na = len(sa)
    for i, j in zip(*_pairs_to_check(sa, sb)):
        if segments_intersect3d(*sa[i], *sb[j - na]):
            return False
    return True


def rational_rotation(w, x, y, z):
    """Exact rotation matrix of the (unnormalized) rational quaternion."""
    n = w * w + x * x + y * y + z * z
    if n == 0:
        raise ValueError("zero quaternion")
    return (
        ((w * w + x * x - y * y - z * z) / n, 2 * (x * y - w * z) / n, 2 * (x * z + w * y) / n),
        (2 * (x * y + w * z) / n, (w * w - x * x + y * y - z * z) / n, 2 * (y * z - w * x) / n),
        (2 * (x * z - w * y) / n, 2 * (y * z + w * x) / n, (w * w - x * x - y * y + z * z) / n),
    )


def mat_apply(m, p):
    return tuple(sum((m[i][k] * p[k] for k in range(3)), ZERO) for i in range(3))


def merge_collinear(points):
    """Drop vertices lying inside a straight run; the point set is unchanged."""
    pts = list(points)
    if len(pts) < 3:
        return tuple(pts)
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        a, b, c = out[-1], pts[i], pts[i + 1]
        d1, d2 = sub(b, a), sub(c, b)
        if cross(d1, d2) == (ZERO, ZERO, ZERO) and dot(d1, d2) > 0:
            continue
        out.append(b)
    out.append(pts[-1])
    return tuple(out)
