"""Knot diagrams and the exact invariants used as oracles.

Curves are projected along a (slightly sheared) z-axis.  A projection is
accepted only after exact genericity certificates pass: no vertex lands on
another segment, crossings are transverse, and no two crossings coincide.
Crossing signs follow the right-handed convention, under which the Hopf
link made of two positively oriented round circles has linking number +1
and agrees with the Gauss linking integral.
"""
from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from .geometry import (box_pairs, cross2, mat_apply, on_segment2d, orient2d,
                       segments_apart2d, sub)
from .rational import Q, ZERO


class DiagramError(ValueError):
    """The projection schedule was exhausted or the input is not embedded."""


# Projection directions are (-alpha, -beta, 1); tried in order.
SHEAR_SCHEDULE = (
    (Q(0), Q(0)),
    (Q(1, 97), Q(1, 89)),
    (Q(-1, 53), Q(1, 61)),
    (Q(1, 31), Q(-1, 37)),
    (Q(-2, 43), Q(-1, 47)),
    (Q(1, 17), Q(1, 19)),
    (Q(-1, 11), Q(1, 13)),
    (Q(3, 29), Q(-2, 23)),
    (Q(1, 7), Q(2, 9)),
    (Q(-1, 5), Q(-1, 6)),
    (Q(1, 3), Q(1, 4)),
    (Q(-1, 2), Q(2, 5)),
)


@dataclass(frozen=True)
class Crossing:
    over: tuple    # (component, segment index, parameter along segment)
    under: tuple
    sign: int
    position: tuple


@dataclass(frozen=True)
class KnotDiagram:
    components: tuple      # closed polygons, each a tuple of (x, y, height)
    crossings: tuple
    shear: tuple

    @property
    def n_components(self):
        return len(self.components)


def _shear(point, alpha, beta):
    x, y, z = point
    return (x + alpha * z, y + beta * z, z)


class _Degenerate(Exception):
    pass


def _crossing_candidates(segs):
    """Pairs of projected segments that may touch, as determined in floats.

    A pair is dropped only when both endpoints of one segment are certainly
    on the same side of the other's line; the exact code decides the rest.
    """
    if len(segs) < 2:
        return []
    p0 = np.array([[float(s[2][0]), float(s[2][1])] for s in segs])
    p1 = np.array([[float(s[3][0]), float(s[3][1])] for s in segs])
    I, J = box_pairs(np.minimum(p0, p1) - 1e-9, np.maximum(p0, p1) + 1e-9)
    keep = ~segments_apart2d(p0[I], p1[I], p0[J], p1[J])
    return sorted(zip(I[keep].tolist(), J[keep].tolist()))


def _crossings(comps):
    segs = []
    for c, poly in enumerate(comps):
        n = len(poly)
        for i in range(n):
            segs.append((c, i, poly[i], poly[(i + 1) % n]))
    sizes = [len(p) for p in comps]

    def adjacent(s, t):
        if s[0] != t[0]:
            return False
        n = sizes[s[0]]
        return (s[1] - t[1]) % n in (1, n - 1)

    found = []
    seen = set()
    for i, j in _crossing_candidates(segs):
        s, t = segs[i], segs[j]
        a0, a1, b0, b1 = s[2][:2], s[3][:2], t[2][:2], t[3][:2]
        if adjacent(s, t):
            if sizes[s[0]] == 2:
                raise _Degenerate
            # shared vertex; only a collinear fold is degenerate
            shared_first = s[3] == t[2]
            p, q = (b1, a0) if shared_first else (a1, b0)
            common = a1 if shared_first else a0
            if orient2d(common, p, q) == 0 and (
                    on_segment2d(p, common, q) or on_segment2d(q, common, p)):
                raise _Degenerate
            continue
        o1, o2 = orient2d(a0, a1, b0), orient2d(a0, a1, b1)
        if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
            continue
        o3, o4 = orient2d(b0, b1, a0), orient2d(b0, b1, a1)
        if not (o1 and o2 and o3 and o4):
            # a vertex on the other segment (or collinear overlap) is degenerate
            if ((not o1 and on_segment2d(b0, a0, a1)) or (not o2 and on_segment2d(b1, a0, a1))
                    or (not o3 and on_segment2d(a0, b0, b1))
                    or (not o4 and on_segment2d(a1, b0, b1))):
                raise _Degenerate
            continue
        if (o3 > 0) == (o4 > 0):
            continue
        ts = o3 / (o3 - o4)
        tt = o1 / (o1 - o2)
        pos = (a0[0] + ts * (a1[0] - a0[0]), a0[1] + ts * (a1[1] - a0[1]))
        if pos in seen:
            raise _Degenerate
        seen.add(pos)
        za = s[2][2] + ts * (s[3][2] - s[2][2])
        zb = t[2][2] + tt * (t[3][2] - t[2][2])
        if za == zb:
            raise DiagramError("curves intersect in space")
        da = sub(a1, a0)
        db = sub(b1, b0)
        if za > zb:
            over, under, dover, dunder = (s[0], s[1], ts), (t[0], t[1], tt), da, db
        else:
            over, under, dover, dunder = (t[0], t[1], tt), (s[0], s[1], ts), db, da
        sign = 1 if cross2(dover, dunder) > 0 else -1
        found.append(Crossing(over, under, sign, pos))
    return found


def project_to_diagram(curves, schedule_start=0, transform=None):
    """Project closed polygons (sequences of 3D points) to a generic diagram.

    *transform* is an optional exact 3x3 matrix applied first.
    """
    curves = [tuple(c) for c in curves]
    if transform is not None:
        curves = [tuple(mat_apply(transform, p) for p in c) for c in curves]
    for k in range(schedule_start, len(SHEAR_SCHEDULE)):
        alpha, beta = SHEAR_SCHEDULE[k]
        comps = tuple(tuple(_shear(p, alpha, beta) for p in c) for c in curves)
        try:
            crossings = _crossings(comps)
        except _Degenerate:
            continue
        return KnotDiagram(comps, tuple(crossings), (alpha, beta))
    raise DiagramError("no generic projection found in the shear schedule")


# -- closures of long curves ----------------------------------------------------

def close_long(points):
    """Close a long curve through a rectangular arc in the plane ``z = 0``.

    The curve must end at ``(+-1, y0, 0)`` with the same ``y0 >= 0`` at both
    ends.  Distinct offsets give nested, disjoint arcs, so a core and its
    push-off close up without picking up extra linking.
    """
    first, last = points[0], points[-1]
    y0 = first[1]
    if (first[0], first[2], last[0], last[1], last[2]) != (-1, 0, 1, y0, 0) or y0 < 0:
        raise ValueError("closure needs ends (-1, y0, 0) and (1, y0, 0) with y0 >= 0")
    far = 2 + y0
    return tuple(points) + ((far, y0, ZERO), (far, -far, ZERO), (-far, -far, ZERO), (-far, y0, ZERO))


def long_knot_diagram(points, schedule_start=0, transform=None):
    return project_to_diagram([close_long(points)], schedule_start, transform)


def long_pair_diagram(a, b, schedule_start=0, transform=None):
    return project_to_diagram([close_long(a), close_long(b)], schedule_start, transform)


# -- invariants ---------------------------------------------------------------------

def linking_number(d):
    if d.n_components != 2:
        raise ValueError("linking number needs exactly two components")
    total = sum(c.sign for c in d.crossings if c.over[0] != c.under[0])
    return total // 2


def writhe(d):
    if d.n_components != 1:
        raise ValueError("writhe is defined here for one component")
    return sum(c.sign for c in d.crossings)


def _passes(d):
    """Crossing passes along component 0 in travel order: (key, crossing, is_over)."""
    passes = []
    for idx, c in enumerate(d.crossings):
        passes.append(((c.over[1], c.over[2]), idx, True))
        passes.append(((c.under[1], c.under[2]), idx, False))
    passes.sort(key=lambda p: p[0])
    return passes


def gauss_code(d):
    """Signed Gauss sequence, e.g. ``O1+ U2+ O3+ U1+ O2+ U3+``."""
    if d.n_components != 1:
        raise ValueError("Gauss code is defined here for one component")
    labels = {}
    tokens = []
    for _, idx, is_over in _passes(d):
        label = labels.setdefault(idx, len(labels) + 1)
        sign = "+" if d.crossings[idx].sign > 0 else "-"
        tokens.append(f"{'O' if is_over else 'U'}{label}{sign}")
    return " ".join(tokens)


def _bareiss_det(m):
    m = [list(row) for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def coloring_determinant(d):
    """|Alexander polynomial at -1| from the Wirtinger (Fox) matrix.

    Independent of the face structure used by :func:`determinant`.
    """
    if d.n_components != 1:
        raise ValueError("determinant needs one component")
    n = len(d.crossings)
    if n == 0:
        return 1
    passes = _passes(d)
    # arc k starts right after the k-th under-pass in travel order
    arc_of_pass = []
    arc = 0
    for _, _, is_over in passes:
        arc_of_pass.append(arc)
        if not is_over:
            arc += 1
    arc_of_pass = [a % n for a in arc_of_pass]
    over_arc = {}
    under_in, under_out = {}, {}
    for p, (_, idx, is_over) in enumerate(passes):
        if is_over:
            over_arc[idx] = arc_of_pass[p]
        else:
            under_in[idx] = arc_of_pass[p]
            under_out[idx] = (arc_of_pass[p] + 1) % n
    rows = []
    for idx in range(n):
        row = [0] * n
        row[over_arc[idx]] += 2
        row[under_in[idx]] -= 1
        row[under_out[idx]] -= 1
        rows.append(row)
    minor = [r[1:] for r in rows[1:]]
    return abs(_bareiss_det(minor))


def _angle_cmp(u, v):
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = cross2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _faces(d):
    """Faces of the planar 4-valent graph, as corner lists per crossing.

    Returns ``(face_of_corner, n_faces)``, where ``face_of_corner[idx][r]`` is
    the face occupying the sector starting (counterclockwise) at ray ``r`` of
    crossing ``idx``; rays are numbered in counterclockwise order.
    """
    poly = d.components[0]
    npts = len(poly)
    passes = _passes(d)
    m = len(passes)

    def direction(seg):
        a, b = poly[seg], poly[(seg + 1) % npts]
        return (b[0] - a[0], b[1] - a[1])

    # rays at each crossing: (direction, pass index, outgoing?, over strand?)
    rays = {}
    for p, ((seg, _), idx, is_over) in enumerate(passes):
        dx, dy = direction(seg)
        rays.setdefault(idx, []).append(((dx, dy), p, True, is_over))
        rays.setdefault(idx, []).append(((-dx, -dy), p, False, is_over))
    for idx in rays:
        rays[idx].sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
    ray_pos = {}
    for idx, lst in rays.items():
        for r, (_, p, out, _) in enumerate(lst):
            ray_pos[(p, out)] = (idx, r)

    # dart = (edge k, forward?) ; edge k runs from pass k to pass k+1
    face_of_corner = {idx: [None] * 4 for idx in rays}
    dart_face = {}
    n_faces = 0
    for start in [(k, f) for k in range(m) for f in (True, False)]:
        if start in dart_face:
            continue
        dart = start
        while dart not in dart_face:
            dart_face[dart] = n_faces
            k, fwd = dart
            arrive = ((k + 1) % m, False) if fwd else (k, True)
            idx, r = ray_pos[arrive]
            r_out = (r - 1) % 4
            face_of_corner[idx][r_out] = n_faces
            _, p, out, _ = rays[idx][r_out]
            dart = (p, True) if out else ((p - 1) % m, False)
        n_faces += 1
    return face_of_corner, rays, n_faces


def determinant(d):
    """Knot determinant from a Goeritz matrix of the checkerboard coloring."""
    if d.n_components != 1:
        raise ValueError("determinant needs one component")
    if not d.crossings:
        return 1
    face_of_corner, rays, n_faces = _faces(d)
    # two-color the faces: the corners at a crossing alternate colors
    color = {}
    adj = {}
    for idx, corners in face_of_corner.items():
        for r in range(4):
            a, b = corners[r], corners[(r + 1) % 4]
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    stack = [0]
    color[0] = 0
    while stack:
        f = stack.pop()
        for g in adj.get(f, ()):
            if g not in color:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise RuntimeError("checkerboard coloring failed")
    if len(color) != n_faces:
        raise RuntimeError("face graph is disconnected")
    shaded = sorted(f for f in range(n_faces) if color[f] == 0)
    index = {f: i for i, f in enumerate(shaded)}
    g = [[0] * len(shaded) for _ in shaded]
    for idx, corners in face_of_corner.items():
        starts = [r for r in range(4) if color[corners[r]] == 0]
        eta = 1 if rays[idx][starts[0]][3] else -1
        fi, fj = corners[starts[0]], corners[starts[1]]
        if fi == fj:
            continue
        i, j = index[fi], index[fj]
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    minor = [row[1:] for row in g[1:]]
    return abs(_bareiss_det(minor))



# -- invariants of framed long knots -------------------------------------------

def _core_points(f):
    return f.vertices if hasattr(f, "vertices") else tuple(f)


def knot_diagram(f, transform=None, schedule_start=0):
    """Diagram of the closure of a long knot (a FramedTubeKnot or a point list)."""
    return long_knot_diagram(_core_points(f), schedule_start, transform)


def knot_determinant(f, transform=None, schedule_start=0):
    return determinant(knot_diagram(f, transform, schedule_start))


def knot_writhe(f, transform=None, schedule_start=0):
    return writhe(knot_diagram(f, transform, schedule_start))


def framing_number(f, transform=None, schedule_start=0):
    """Linking number of the core of *f* with its push-off.

    Knots produced by a composition carry the push-off they were built with;
    otherwise the tube map of *f* supplies one.  The result must agree with
    the framing stored on *f*.
    """
    from .tube import build_tube_map, pushoff  # tube builds on this module

    push = f.pushoff
    if push is None:
        push = pushoff(build_tube_map(f))
    link = linking_number(long_pair_diagram(f.vertices, push.vertices, schedule_start, transform))
    if link != f.framing:
        raise ValueError(f"push-off links the core {link} times, framing says {f.framing}")
    return link
