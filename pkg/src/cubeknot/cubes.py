"""Little cubes, cube configurations and the operad structure maps.

A little k-cube is stored as k affine maps ``t -> a*t + b`` with ``a > 0``
and ``a + |b| <= 1``; the image of the standard cube ``[-1, 1]^k`` is the
product of the intervals ``[b - a, b + a]``.  All arithmetic is exact.
"""
from dataclasses import dataclass
from itertools import accumulate

from .rational import ONE, Q, ZERO, q_from_json, q_to_json, to_q


class CubeError(ValueError):
    """Contract violation in the cubes operad (dimension, arity, overlap)."""


@dataclass(frozen=True)
class LittleCube:
    axes: tuple  # ((a_1, b_1), ..., (a_k, b_k))

    def __post_init__(self):
        axes = tuple((to_q(a), to_q(b)) for a, b in self.axes)
        if not axes:
            raise CubeError("a little cube needs at least one axis")
        for a, b in axes:
            if a <= 0:
                raise CubeError(f"axis scale must be positive, got {a}")
            if a + abs(b) > 1:
                raise CubeError(f"axis map t -> {a}t + {b} leaves [-1, 1]")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def from_intervals(cls, *intervals):
        """Build a cube from its image intervals ``(lo, hi)`` per axis."""
        axes = []
        for lo, hi in intervals:
            lo, hi = to_q(lo), to_q(hi)
            if hi <= lo:
                raise CubeError(f"empty interval [{lo}, {hi}]")
            axes.append(((hi - lo) / 2, (hi + lo) / 2))
        return cls(tuple(axes))

    @classmethod
    def identity(cls, k):
        return cls(((ONE, ZERO),) * k)

    @property
    def dimension(self):
        return len(self.axes)

    def intervals(self):
        return tuple((b - a, b + a) for a, b in self.axes)

    def apply(self, point):
        return tuple(a * t + b for (a, b), t in zip(self.axes, point))

    def compose(self, inner):
        """The affine composite ``self o inner``."""
        if inner.dimension != self.dimension:
            raise CubeError("dimension mismatch in cube composition")
        return LittleCube(tuple(
            (a * c, a * d + b) for (a, b), (c, d) in zip(self.axes, inner.axes)
        ))

    def interior_overlaps(self, other):
        return all(
            lo1 < hi2 and lo2 < hi1
            for (lo1, hi1), (lo2, hi2) in zip(self.intervals(), other.intervals())
        )

    def sort_key(self):
        return tuple(x for a, b in self.axes for x in (b, a))


@dataclass(frozen=True)
class CubeConfig:
    dimension: int
    cubes: tuple = ()

    def __post_init__(self):
        cubes = tuple(self.cubes)
        if self.dimension < 1:
            raise CubeError("dimension must be positive")
        for cube in cubes:
            if cube.dimension != self.dimension:
                raise CubeError(
                    f"cube of dimension {cube.dimension} in a "
                    f"{self.dimension}-dimensional configuration")
        for i in range(len(cubes)):
            for j in range(i + 1, len(cubes)):
                if cubes[i].interior_overlaps(cubes[j]):
                    raise CubeError(f"cubes {i} and {j} have overlapping interiors")
        object.__setattr__(self, "cubes", cubes)

    def __len__(self):
        return len(self.cubes)

    def __iter__(self):
        return iter(self.cubes)

    def __getitem__(self, i):
        return self.cubes[i]

    @classmethod
    def identity(cls, k):
        return cls(k, (LittleCube.identity(k),))


@dataclass(frozen=True)
class ProjectionData:
    """The (possibly overlapping) shadows ``pi`` and heights ``t`` of a configuration."""
    pi: tuple
    t: tuple


def compose_operad(outer, inners):
    """Structure map: substitute ``inners[m]`` into cube ``m`` of ``outer``."""
    inners = list(inners)
    if len(inners) != len(outer):
        raise CubeError(f"outer configuration has {len(outer)} cubes, "
                        f"got {len(inners)} inner configurations")
    for inner in inners:
        if inner.dimension != outer.dimension:
            raise CubeError("dimension mismatch in operad composition")
    cubes = tuple(cube.compose(c) for cube, inner in zip(outer, inners) for c in inner)
    return CubeConfig(outer.dimension, cubes)


def permute(config, perm):
    """Right action: cube ``i`` of the result is cube ``perm[i]`` of *config*.

    *perm* is a sequence of 0-based indices.
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(len(config))):
        raise CubeError(f"{perm} is not a permutation of {len(config)} cubes")
    return CubeConfig(config.dimension, tuple(config[p] for p in perm))


def project(config):
    if config.dimension < 2:
        raise CubeError("cannot project a configuration of 1-cubes")
    pi = tuple(LittleCube(c.axes[:-1]) for c in config)
    t = tuple(c.axes[-1][1] - c.axes[-1][0] for c in config)
    return ProjectionData(pi, t)


def base_config(n):
    """The standard row of ``n`` squares ``Q_1, ..., Q_n`` resting on ``y = 0``."""
    if n < 0:
        raise CubeError("n must be non-negative")
    d = 2 * n + 1
    cubes = tuple(
        LittleCube.from_intervals((Q(-d + 4 * i - 2, d), Q(-d + 4 * i, d)), (0, Q(2, d)))
        for i in range(1, n + 1)
    )
    return CubeConfig(2, cubes)


def block_permutation(arities, perm):
    """Permutation of the composite inputs induced by permuting the blocks."""
    offsets = [0, *accumulate(arities)]
    return [offsets[p] + i for p in perm for i in range(arities[p])]


# -- JSON ---------------------------------------------------------------------

def cube_to_json(cube):
    return {"axes": [[q_to_json(a), q_to_json(b)] for a, b in cube.axes]}


def cube_from_json(obj):
    try:
        return LittleCube(tuple((q_from_json(a), q_from_json(b)) for a, b in obj["axes"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed cube {obj!r}") from exc


def config_to_json(config):
    return {
        "schema": "cubeknot/1",
        "dimension": config.dimension,
        "cubes": [cube_to_json(c) for c in config],
    }


def config_from_json(obj):
    try:
        dim = int(obj["dimension"])
        cubes = tuple(cube_from_json(c) for c in obj["cubes"])
    except (KeyError, TypeError) as exc:
        raise ValueError("malformed cube configuration") from exc
    return CubeConfig(dim, cubes)
