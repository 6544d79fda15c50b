"""Random generators and independent oracles shared by the tests."""
import math
import random
from fractions import Fraction

import numpy as np

from cubeknot.cubes import CubeConfig, CubeError, LittleCube
from cubeknot.rational import Q

DEN = 64


def random_cube(rng, k=2, den=DEN):
    axes = []
    for _ in range(k):
        lo, hi = sorted(rng.sample(range(-den, den + 1), 2))
        axes.append((Q(lo, den), Q(hi, den)))
    return LittleCube.from_intervals(*axes)


def random_config(rng, j, k=2, den=DEN, tries=10_000):
    """Grid-aligned cubes, redrawn until their interiors are disjoint."""
    for _ in range(tries):
        cubes = []
        for _ in range(j):
            c = random_cube(rng, k, den)
            if any(c.interior_overlaps(d) for d in cubes):
                break
            cubes.append(c)
        else:
            return CubeConfig(k, tuple(cubes))
    raise RuntimeError("could not draw a disjoint configuration")


def small_config(rng, j, k=2, den=DEN):
    """Like random_config but with cubes at most a third of the side, so draws rarely collide."""
    for _ in range(10_000):
        cubes = []
        for _ in range(j):
            axes = []
            for _ in range(k):
                w = rng.randint(2, den // 3)
                lo = rng.randint(-den, den - w)
                axes.append((Q(lo, den), Q(lo + w, den)))
            c = LittleCube.from_intervals(*axes)
            if any(c.interior_overlaps(d) for d in cubes):
                break
            cubes.append(c)
        else:
            return CubeConfig(k, tuple(cubes))
    raise RuntimeError("could not draw a disjoint configuration")


def tie_config(rng, j):
    """A configuration in which cubes 0 and 1 rest on the same height."""
    while True:
        t = Q(rng.randint(-16, 8), 16)
        cubes = []
        xs = sorted(rng.sample(range(0, 33), 2 * j))
        for k in range(j):
            x = (Q(xs[2 * k] - 16, 16), Q(xs[2 * k + 1] - 16, 16))
            y0 = t if k < 2 else Q(rng.randint(-16, 12), 16)
            y1 = min(y0 + Q(rng.randint(1, 8), 16), Q(1))
            cubes.append(LittleCube.from_intervals(x, (y0, y1)))
        try:
            return CubeConfig(2, tuple(cubes))
        except CubeError:
            continue


def random_rotation(rng):
    """Exact rotation from a random integer quaternion."""
    from cubeknot.geometry import rational_rotation
    while True:
        q = [Q(rng.randint(-9, 9)) for _ in range(4)]
        if any(q):
            return rational_rotation(*q)


# -- oracles -------------------------------------------------------------------------

def interval_compose(outer, inner):
    """Substitute *inner* into *outer*, both given as lists of (lo, hi) Fractions.

    Works on interval endpoints directly: the point at fraction s of the
    standard interval lands at fraction s of the outer interval.
    """
    out = []
    for (olo, ohi), (ilo, ihi) in zip(outer, inner):
        def place(x):
            return olo + (x + 1) / 2 * (ohi - olo)
        out.append((place(ilo), place(ihi)))
    return out


def gauss_linking(a, b):
    """Gauss linking integral of two closed polygons, summed exactly per segment pair
    (solid-angle formula), evaluated in floating point."""
    A = np.array([[float(c) for c in p] for p in a])
    B = np.array([[float(c) for c in p] for p in b])
    p1, p2 = A, np.roll(A, -1, axis=0)
    p3, p4 = B, np.roll(B, -1, axis=0)
    P1, P2 = p1[:, None, :], p2[:, None, :]
    P3, P4 = p3[None, :, :], p4[None, :, :]
    r13, r14, r23, r24 = P3 - P1, P4 - P1, P3 - P2, P4 - P2

    def unit(v):
        n = np.linalg.norm(v, axis=-1, keepdims=True)
        return v / np.where(n == 0, 1, n)

    n1 = unit(np.cross(r13, r14))
    n2 = unit(np.cross(r14, r24))
    n3 = unit(np.cross(r24, r23))
    n4 = unit(np.cross(r23, r13))

    def asin(x, y):
        return np.arcsin(np.clip(np.sum(x * y, axis=-1), -1, 1))

    omega = asin(n1, n2) + asin(n2, n3) + asin(n3, n4) + asin(n4, n1)
    sign = np.sign(np.sum(np.cross(P4 - P3, P2 - P1) * r13, axis=-1))
    return float(np.sum(omega * sign) / (4 * math.pi))


def semidirect_matrix(perm, windings):
    """``(p, v)`` as the affine integer matrix ``[[P, v], [0, 1]]``; P sends e_j to e_p(j)."""
    n = len(perm)
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    for j, pj in enumerate(perm):
        m[pj, j] = 1
    m[:n, n] = windings
    m[n, n] = 1
    return m


def random_braid_letters(rng, n, length):
    return [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]


def random_free_letters(rng, n, length):
    return [rng.choice((1, -1)) * rng.randint(1, n) for _ in range(length)]


def random_tree_text(rng, depth=0, shuffle=None):
    """A random tree as text; *shuffle* permutes every sum's summands."""
    kinds = ["prime", "torus", "unknot"] if depth >= 3 else \
        ["prime", "prime", "torus", "unknot", "sum", "sum", "cable", "hyperbolic"]
    kind = rng.choice(kinds)
    if kind == "prime":
        return f"(prime {rng.choice('abc')})"
    if kind == "torus":
        return rng.choice(["(torus 2 3)", "(torus 2 -3)", "(torus 3 5)"])
    if kind == "unknot":
        return "(unknot)"
    if kind == "cable":
        return f"(cable 2 {rng.choice((1, 3, 5))} {random_tree_text(rng, depth + 1, shuffle)})"
    kids = [random_tree_text(rng, depth + 1, shuffle) for _ in range(rng.randint(0 if kind == "hyperbolic" else 2, 3))]
    if kind == "hyperbolic":
        return " ".join(["(hyperbolic", f"v{rng.randint(1, 3)}", *kids]) + ")"
    if shuffle is not None:
        shuffle.shuffle(kids)
    return "(sum " + " ".join(kids) + ")"


def new_rng(seed):
    return random.Random(seed)
