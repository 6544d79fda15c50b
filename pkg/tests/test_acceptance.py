"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary.
Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""
import itertools
import json
import sys
import time

import numpy as np
import pytest

import conftest
from cubeknot import geometry as geo
from cubeknot.braids import (BraidWord, FramedBraid, FreeGroupWord, artin_action, compose_framed,
                             perm_compose, to_permutation, winding_hom)
from cubeknot.catalog import DETERMINANTS, NAMES, load
from cubeknot.cubes import (CubeConfig, LittleCube, base_config, block_permutation, compose_operad,
                            permute, project)
from cubeknot.free import STAR, FreeCubesElement, Pi0Class, act, evaluate, normalize, pi0
from cubeknot.invariants import (coloring_determinant, framing_number, knot_determinant,
                                 knot_diagram, linking_number, long_pair_diagram)
from cubeknot.motions import monodromy, overlapping_projections
from cubeknot.rational import Q
from cubeknot.splice import (Circle, CubesQuotient, Opaque, Point, Product, homotopy_type,
                             parse_tree)
from cubeknot.tube import build_tube_map, kappa, knot_to_json, pushoff

from helpers import (new_rng, random_braid_letters, random_config, random_free_letters,
                     random_rotation, random_tree_text, semidirect_matrix, small_config,
                     tie_config)


def record(n, ok, detail):
    conftest.ACCEPTANCE.append((n, f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"))
    assert ok, detail


# 1 ------------------------------------------------------------------------------------

def test_criterion_01_operad_axioms():
    rng = new_rng(101)
    start = time.perf_counter()
    failures = 0
    for _ in range(1000):
        a = random_config(rng, rng.randint(1, 3))
        bs = [random_config(rng, rng.randint(0, 2)) for _ in a]
        cs = [[random_config(rng, rng.randint(0, 2)) for _ in b] for b in bs]
        left = compose_operad(compose_operad(a, bs), [c for row in cs for c in row])
        right = compose_operad(a, [compose_operad(b, row) for b, row in zip(bs, cs)])
        failures += left != right
    for _ in range(1000):
        a = random_config(rng, rng.randint(0, 4))
        failures += compose_operad(CubeConfig.identity(2), [a]) != a
        failures += compose_operad(a, [CubeConfig.identity(2)] * len(a)) != a
    for _ in range(1000):
        a = random_config(rng, rng.randint(1, 4))
        bs = [random_config(rng, rng.randint(0, 2)) for _ in a]
        perm = list(range(len(a)))
        rng.shuffle(perm)
        left = compose_operad(permute(a, perm), [bs[p] for p in perm])
        right = permute(compose_operad(a, bs), block_permutation([len(b) for b in bs], perm))
        failures += left != right
    elapsed = time.perf_counter() - start
    record(1, failures == 0 and elapsed < 60,
           f"operad axioms, 3x1000 instances, {failures} failures, {elapsed:.1f}s (< 60s)")


# 2 ------------------------------------------------------------------------------------

def test_criterion_02_tie_break():
    rng = new_rng(102)
    failures = 0
    for _ in range(200):
        c = tie_config(rng, rng.randint(2, 3))
        knots = [load(rng.choice(NAMES), rng.randint(-2, 2)) for _ in c]
        t = project(c).t
        o1 = sorted(range(len(c)), key=lambda i: (t[i], i))
        o2 = sorted(range(len(c)), key=lambda i: (t[i], -i))
        assert o1 != o2
        failures += kappa(c, knots, o1).vertices != kappa(c, knots, o2).vertices
    record(2, failures == 0, f"kappa tie-break, 200 configs, {failures} failures")


# 3 ------------------------------------------------------------------------------------

def test_criterion_03_framing_additivity():
    rng = new_rng(103)
    failures = overlapping = 0
    for _ in range(100):
        c = small_config(rng, rng.randint(1, 3))
        overlapping += overlapping_projections(c)
        knots = [load(rng.choice(NAMES + ("unknot",)), rng.randint(-3, 3)) for _ in c]
        h = kappa(c, knots)
        failures += framing_number(h) != sum(k.framing for k in knots)
    record(3, failures == 0 and overlapping > 0,
           f"framing additivity, 100 pairs ({overlapping} with overlapping projections), "
           f"{failures} failures")


# 4 ------------------------------------------------------------------------------------

def test_criterion_04_determinant_multiplicativity():
    start = time.perf_counter()
    # the catalog values themselves, by two independent determinant routes
    failures = sum(knot_determinant(load(n)) != DETERMINANTS[n] or
                   coloring_determinant(knot_diagram(load(n))) != DETERMINANTS[n] for n in NAMES)
    count = 0
    for n in range(0, 5):
        for combo in itertools.combinations_with_replacement(NAMES, n):
            f = kappa(base_config(n), [load(name) for name in combo])
            failures += knot_determinant(f) != int(np.prod([DETERMINANTS[x] for x in combo]))
            count += 1
    elapsed = time.perf_counter() - start
    record(4, failures == 0 and elapsed < 120,
           f"determinant multiplicativity, {count} multisets, {failures} failures, "
           f"{elapsed:.1f}s (< 120s)")


# 5 ------------------------------------------------------------------------------------

NESTED = CubeConfig(2, (
    LittleCube.from_intervals((Q(-4, 5), Q(4, 5)), (-1, Q(-2, 5))),
    LittleCube.from_intervals((Q(-1, 5), Q(1, 5)), (Q(3, 10), Q(9, 10))),
    LittleCube.from_intervals((Q(-1, 2), Q(1, 2)), (Q(-3, 10), Q(1, 5))),
))


def test_criterion_05_nested_regime():
    t = project(NESTED).t
    ok = t[0] < t[2] < t[1] and overlapping_projections(NESTED)
    results = []
    for names in (("trefoil", "trefoil", "figure8"), ("figure8", "trefoil_mirror", "figure8_mirror")):
        h = kappa(NESTED, [load(n) for n in names])
        det = knot_determinant(h)
        want = int(np.prod([DETERMINANTS[n] for n in names]))
        ok = ok and geo.is_embedded(h.vertices) and det == want
        results.append(f"{det}/{want}")
    record(5, ok, f"nested config, determinants {', '.join(results)}")


# 6 ------------------------------------------------------------------------------------

def test_criterion_06_braids():
    rng = new_rng(106)
    failures = 0
    for n in range(2, 7):
        gens = [FreeGroupWord.generator(k) for k in range(1, n + 1)]
        for i in range(1, n - 1):
            a, b = BraidWord(n, (i, i + 1, i)), BraidWord(n, (i + 1, i, i + 1))
            failures += sum(artin_action(a, x) != artin_action(b, x) for x in gens)
        for i in range(1, n):
            for j in range(i + 2, n):
                a, b = BraidWord(n, (i, j)), BraidWord(n, (j, i))
                failures += sum(artin_action(a, x) != artin_action(b, x) for x in gens)
    for _ in range(500):
        n = rng.randint(3, 6)
        i = rng.randint(1, n - 2)
        w = FreeGroupWord(random_free_letters(rng, n, rng.randint(1, 8)))
        ctx = BraidWord(n, random_braid_letters(rng, n, rng.randint(0, 3)))
        a = ctx * BraidWord(n, (i, i + 1, i)) * ctx.inverse()
        b = ctx * BraidWord(n, (i + 1, i, i + 1)) * ctx.inverse()
        failures += artin_action(a, w) != artin_action(b, w)
        j = rng.randint(1, n - 1)
        if abs(i - j) >= 2:
            failures += artin_action(BraidWord(n, (i, j)), w) != artin_action(BraidWord(n, (j, i)), w)
    hom = framed = 0
    for _ in range(500):
        n = rng.randint(2, 6)
        a = BraidWord(n, random_braid_letters(rng, n, rng.randint(0, 6)))
        b = BraidWord(n, random_braid_letters(rng, n, rng.randint(0, 6)))
        hom += to_permutation(a * b) != perm_compose(to_permutation(a), to_permutation(b))
        fa = FramedBraid(a, [rng.randint(-5, 5) for _ in range(n)])
        fb = FramedBraid(b, [rng.randint(-5, 5) for _ in range(n)])
        want = semidirect_matrix(*winding_hom(fa)) @ semidirect_matrix(*winding_hom(fb))
        framed += not np.array_equal(semidirect_matrix(*winding_hom(compose_framed(fa, fb))), want)
    record(6, failures + hom + framed == 0,
           f"braid relations {failures} failures, permutation hom {hom}, framed rule {framed}")


# 7 ------------------------------------------------------------------------------------

def test_criterion_07_monodromy():
    start = time.perf_counter()
    f, g = load("trefoil"), load("figure8")
    iso = monodromy(BraidWord(2, (1,)), [f, g], 16)
    embedded = all(geo.is_embedded(h.vertices) for h in iso.frames)
    dets = set(iso.determinants)
    framings = set(iso.framings) | {framing_number(h) for h in iso.frames}
    loop = monodromy(BraidWord(2, (1, 1)), [f, g], 16)
    first, last = (json.dumps(knot_to_json(h)).encode() for h in (loop.frames[0], loop.frames[-1]))
    elapsed = time.perf_counter() - start
    ok = embedded and dets == {15} and len(framings) == 1 and first == last and elapsed < 120
    record(7, ok, f"monodromy, {len(iso.frames)} frames, determinants {sorted(dets)}, "
                  f"framings {sorted(framings)}, closed loop identical: {first == last}, "
                  f"{elapsed:.1f}s (< 120s)")


# 8 ------------------------------------------------------------------------------------

def test_criterion_08_free_algebra():
    rng = new_rng(108)
    registry = {"a": load("trefoil", 1), "b": load("figure8", -2), "c": load("figure8_mirror")}
    symbols = ("a", "b", "c", STAR)

    def element(config):
        return FreeCubesElement(config, tuple(rng.choice(symbols) for _ in config))

    idem = base = monoid = 0
    for _ in range(500):
        e = element(small_config(rng, rng.randint(0, 3)))
        n = normalize(e)
        idem += normalize(n) != n
        before, after = evaluate(e, registry), evaluate(n, registry)
        base += ((knot_determinant(before), framing_number(before)) !=
                 (knot_determinant(after), framing_number(after)))
        c = random_config(rng, rng.randint(0, 3))
        parts = [element(random_config(rng, rng.randint(0, 2))) for _ in c]
        total = Pi0Class()
        for p in parts:
            total = total + pi0(p)
        monoid += pi0(act(c, parts)) != total
    record(8, idem + base + monoid == 0,
           f"free algebra, 500 elements: idempotence {idem}, base point {base}, "
           f"pi0 monoid {monoid} failures")


# 9 ------------------------------------------------------------------------------------

def test_criterion_09_splice():
    rules = [
        homotopy_type(parse_tree("(unknot)")) == Point(),
        homotopy_type(parse_tree("(cable 2 3 (cable 2 5 (prime a)))")) ==
        Product((Circle(), Product((Circle(), Opaque("a"))))),
        homotopy_type(parse_tree("(sum (prime a) (prime a))")) ==
        CubesQuotient(2, ((1, 2),), (Opaque("a"), Opaque("a")), 2),
    ]
    failures = 0
    for seed in range(200):
        text = random_tree_text(new_rng(seed))
        shuffled = random_tree_text(new_rng(seed), shuffle=new_rng(10_000 + seed))
        failures += homotopy_type(parse_tree(text)) != homotopy_type(parse_tree(shuffled))
    record(9, all(rules) and failures == 0,
           f"splice rules {sum(rules)}/3, permutation invariance 200 trees, {failures} failures")


# 10 -----------------------------------------------------------------------------------

def test_criterion_10_projection_independence():
    rng = new_rng(110)
    failures = 0
    for name in NAMES:
        f = load(name, rng.randint(1, 3))
        push = pushoff(build_tube_map(f))
        for _ in range(100):
            rot = random_rotation(rng)
            lk = linking_number(long_pair_diagram(f.vertices, push.vertices, transform=rot))
            failures += (knot_determinant(f, rot) != DETERMINANTS[name] or lk != f.framing or
                         framing_number(f, rot) != f.framing)
    record(10, failures == 0,
           f"projection independence, 100 rotations x {len(NAMES)} knots, {failures} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
