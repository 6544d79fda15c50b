"""
Homotopy types from splice trees
================================

A long knot is described by the tree of its satellite decomposition.  The
calculator reads the tree and reports the homotopy type of the component of
the knot space containing it.
"""
import json

from cubeknot.splice import homotopy_type, parse_tree, pi1_extension, prime_summand_count

trees = [
    "(unknot)",
    "(prime a)",
    "(cable 2 3 (prime a))",
    "(sum (prime a) (prime a) (prime b))",
    "(sum (sum (prime a) (torus 2 3)) (cable 2 5 (prime b)))",
    "(hyperbolic v (prime a) (torus 2 3))",
]

for text in trees:
    t = parse_tree(text)
    print(t.sexpr(), f"[{prime_summand_count(t)} prime summands]")
    print("  type:", json.dumps(homotopy_type(t).to_json()))
    print("  pi_1:", json.dumps(pi1_extension(t).to_json()))
