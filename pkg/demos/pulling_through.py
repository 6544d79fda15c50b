"""
Pulling one knot through another
================================

Two long knots sit side by side in the base configuration of two little
squares.  Swapping the squares, with one of them lifted above the other
while they pass, drags one knot through the tube of the other.  Each frame
of the motion is a knot in its own right, and its determinant and framing
stay put the whole way.
"""
import sys

from cubeknot import BraidWord, base_config, kappa, load, monodromy, overlapping_projections

resolution = int(sys.argv[1]) if len(sys.argv) > 1 else 16

# trefoil in the left square, figure-eight in the right one
f, g = load("trefoil"), load("figure8", 1)
iso = monodromy(BraidWord(2, (1,)), [f, g], resolution)

for k, (config, knot) in enumerate(zip(iso.path.frames, iso.frames)):
    nested = "nested" if overlapping_projections(config) else "side by side"
    print(f"frame {k:2d}  {len(knot.vertices):4d} vertices  det {iso.determinants[k]}"
          f"  framing {iso.framings[k]}  {nested}")

# the last frame is the figure-eight followed by the trefoil
print("ends at g # f:", iso.frames[-1].vertices == kappa(base_config(2), [g, f]).vertices)
