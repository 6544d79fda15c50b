"""Regenerate the shipped catalog knots in src/cubeknot/data/.

Each knot starts as a closed polygon sampled from a standard parametrization
and snapped to a small grid.  It is cut open at an edge that no other strand
crosses over; both cut ends are lifted to a plane above the knot and led
out to the axis.  Everything added lives above the knot, so closing the long
knot recovers the original knot type.  The result is checked with the
determinant oracle before it is written.
"""
import json
import math
import sys
from pathlib import Path

from cubeknot.invariants import determinant, long_knot_diagram, project_to_diagram
from cubeknot.rational import Q, snap
from cubeknot.tube import FramedTubeKnot, PolyLine, TubeError, build_tube_map, knot_to_json

DATA = Path(__file__).resolve().parents[1] / "src" / "cubeknot" / "data"


def trefoil(t):
    return (math.sin(t) + 2 * math.sin(2 * t), math.cos(t) - 2 * math.cos(2 * t), -math.sin(3 * t))


def figure_eight(t):
    return ((2 + math.cos(2 * t)) * math.cos(3 * t), (2 + math.cos(2 * t)) * math.sin(3 * t),
            math.sin(4 * t))


def sample(curve, n, den=8):
    return [tuple(snap(c, den) for c in curve(2 * math.pi * k / n)) for k in range(n)]


def cut_edge(poly):
    d = project_to_diagram([poly])
    if d.shear != (0, 0):
        raise RuntimeError("want a generic vertical projection")
    under = {c.under[1] for c in d.crossings}
    free = [k for k in range(len(poly)) if k not in under]
    # prefer a high edge: less room for mistakes when lifting
    return max(free, key=lambda k: poly[k][2] + poly[(k + 1) % len(poly)][2])


def long_from_closed(poly):
    n = len(poly)
    k = cut_edge(poly)
    chain = [poly[(k + 1 + i) % n] for i in range(n)]  # v_{k+1} ... v_k
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    zs = [p[2] for p in poly]
    xc, yc = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    top = max(zs) + Q(1, 2)
    sx = Q(7, 10) / ((max(xs) - min(xs)) / 2)
    sy = Q(3, 5) / ((max(ys) - min(ys)) / 2)
    sz = Q(7, 10) / (top - min(zs))

    def fit(p):
        return (sx * (p[0] - xc), sy * (p[1] - yc), sz * (p[2] - top))

    body = [fit(p) for p in chain]
    a, b = body[0], body[-1]
    a_up, b_up = (a[0], a[1], Q(0)), (b[0], b[1], Q(0))
    # radius tapers from 1 on the outer collar, then a straight run keeps the
    # first corner clear of the fat part of the tube
    x0 = Q(4, 5)
    collar = [(-1, 0, 0), (-Q(19, 20), 0, 0), (-Q(9, 10), 0, 0)]
    verts = [*collar, (-x0, 0, 0), (-x0, a[1], 0), a_up, *body,
             b_up, (x0, b[1], 0), (x0, 0, 0), *[(-x, y, z) for x, y, z in reversed(collar)]]
    out = []
    for p in verts:
        p = tuple(Q(c) for c in p)
        if not out or out[-1] != p:
            out.append(p)
    return out


def with_radius(core):
    for den in (8, 16, 32, 64, 128):
        r = Q(1, den)
        radius = [Q(1)] * 2 + [r] * (len(core) - 4) + [Q(1)] * 2
        try:
            f = FramedTubeKnot(PolyLine(core, long=True), 0, radius)
            tube = build_tube_map(f)
        except TubeError:
            continue
        if min(tube.radius) == r:  # certified without shrinking
            return f
    raise RuntimeError("no radius certified")


def mirror(f):
    core = [(x, -y, z) for x, y, z in f.vertices]
    return FramedTubeKnot(PolyLine(core, long=True), f.framing, f.radius)


def main():
    specs = [("trefoil", trefoil, 12, 3), ("figure8", figure_eight, 16, 5)]
    DATA.mkdir(parents=True, exist_ok=True)
    for name, curve, n, det in specs:
        core = long_from_closed(sample(curve, n))
        f = with_radius(core)
        for label, knot in ((name, f), (name + "_mirror", mirror(f))):
            got = determinant(long_knot_diagram(knot.vertices))
            if got != det:
                sys.exit(f"{label}: determinant {got}, expected {det}")
            obj = knot_to_json(knot)
            (DATA / f"{label}.json").write_text(json.dumps(obj, indent=1) + "\n")
            print(label, len(knot.vertices), "vertices, radius", knot.radius[3], "det", got)


if __name__ == "__main__":
    main()
