"""
Knots inside knots
==================

When the little squares overlap in their horizontal shadows, the knot of
the lower square is tied first and the higher ones are tied inside its
tube.  The heights decide the nesting order.
"""
from cubeknot import CubeConfig, LittleCube, Q, kappa, knot_determinant, load, project

config = CubeConfig(2, (
    LittleCube.from_intervals((Q(-4, 5), Q(4, 5)), (-1, Q(-2, 5))),
    LittleCube.from_intervals((Q(-1, 5), Q(1, 5)), (Q(3, 10), Q(9, 10))),
    LittleCube.from_intervals((Q(-1, 2), Q(1, 2)), (Q(-3, 10), Q(1, 5))),
))
heights = project(config).t
print("heights:", [str(t) for t in heights])

for names in [("trefoil", "trefoil", "figure8"), ("figure8", "figure8_mirror", "trefoil")]:
    h = kappa(config, [load(n) for n in names])
    print(" + ".join(names), "->", len(h.vertices), "vertices, determinant", knot_determinant(h))

# framings simply add up
h = kappa(config, [load("trefoil", 2), load("figure8", -1), load("trefoil_mirror", 3)])
print("framing of the composite:", h.framing)
