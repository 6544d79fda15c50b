"""Paths of cube configurations realizing braid words, and the knot isotopies
they induce through kappa.

Each letter ``s_q^{+-1}`` swaps the cubes in slots ``q`` and ``q+1`` of the
base row.  One cube (the left one for ``s_q``, the right one for its
inverse) shrinks to a third of its width, rises into the band above the row,
slides over its neighbour while the neighbour slides under it, then comes
back down and regrows.  While they pass, the two x-shadows overlap and
kappa nests one tube inside the other.

Letters are performed right to left, so that the cube with label ``j``
ends in slot ``to_permutation(b)[j]``.
"""
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .braids import BraidWord, perm_inverse, to_permutation
from .cubes import CubeConfig, LittleCube, base_config, config_to_json
from .invariants import framing_number, knot_determinant
from .rational import Q
from .tube import TubeError, kappa, knot_to_json

DEFAULT_RESOLUTION = 16


class MotionError(ValueError):
    def __init__(self, message, frame=None):
        super().__init__(message if frame is None else f"frame {frame}: {message}")
        self.frame = frame


@dataclass(frozen=True)
class CubePath:
    frames: tuple
    braid: BraidWord
    resolution: int


@dataclass(frozen=True)
class KnotIsotopy:
    frames: tuple
    determinants: tuple
    framings: tuple
    path: CubePath = None


# a pose gives each cube as (centre x, half width, bottom y, top y)

def _slot(n, s):
    d = 2 * n + 1
    return Q(4 * s + 3, d) - 1, Q(1, d)


def _base_pose(n, slots):
    h = Q(2, 2 * n + 1)
    return [(*_slot(n, s), Q(0), h) for s in slots]


def _key_poses(n, slots, mover, other):
    """The five key poses of one swap; *slots* maps cube label to slot."""
    h = Q(2, 2 * n + 1)
    p0 = _base_pose(n, slots)
    (xm, w), (xo, _) = _slot(n, slots[mover]), _slot(n, slots[other])
    p1 = list(p0)
    p1[mover] = (xm, w / 3, h, 2 * h)
    p2 = list(p1)
    p2[mover] = (xo, w / 3, h, 2 * h)
    p2[other] = (xm, w, Q(0), h)
    p3 = list(p2)
    p3[mover] = (xo, w / 3, Q(0), h)
    p4 = list(p3)
    p4[mover] = (xo, w, Q(0), h)
    return [p0, p1, p2, p3, p4]


def _config(pose):
    return CubeConfig(2, tuple(
        LittleCube.from_intervals((x - w, x + w), (y0, y1)) for x, w, y0, y1 in pose))


def _lerp_pose(p, q, t):
    return [tuple(a + t * (b - a) for a, b in zip(u, v)) for u, v in zip(p, q)]


def cube_motion(b, resolution=DEFAULT_RESOLUTION):
    """Frames of the cube path realizing *b*, ``resolution`` per letter."""
    if resolution < 1:
        raise MotionError("resolution must be positive")
    n = b.strands
    slots = list(range(n))          # slot of each cube label
    frames = [base_config(n)]
    for g in reversed(b.word):
        s = abs(g) - 1
        left, right = slots.index(s), slots.index(s + 1)
        mover, other = (left, right) if g > 0 else (right, left)
        keys = _key_poses(n, slots, mover, other)
        for k in range(1, resolution + 1):
            t = Q(4 * k, resolution)
            seg = min(int(t), 3)
            frames.append(_config(_lerp_pose(keys[seg], keys[seg + 1], t - seg)))
        slots[mover], slots[other] = slots[other], slots[mover]
    return CubePath(tuple(frames), b, resolution)


def overlapping_projections(config):
    """True if some two cubes have overlapping x-shadows."""
    iv = [c.intervals()[0] for c in config]
    return any(iv[i][0] < iv[j][1] and iv[j][0] < iv[i][1]
               for i in range(len(iv)) for j in range(i + 1, len(iv)))


def _frame(args):
    k, config, knots = args
    try:
        f = kappa(config, knots)
        return f, knot_determinant(f), framing_number(f)
    except (TubeError, ValueError) as exc:
        raise MotionError(str(exc), k) from exc


def monodromy(b, knots, resolution=DEFAULT_RESOLUTION, workers=None):
    """Push *knots* along the cube motion of *b*; every frame is certified.

    Frames are independent kappa evaluations; ``workers > 1`` spreads them
    over processes.
    """
    knots = list(knots)
    if len(knots) != b.strands:
        raise MotionError(f"{b.strands} strands but {len(knots)} knots")
    path = cube_motion(b, resolution)
    jobs = [(k, c, knots) for k, c in enumerate(path.frames)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_frame, jobs))
    else:
        results = [_frame(job) for job in jobs]
    frames, dets, fr = zip(*results)
    for k in range(1, len(frames)):
        if dets[k] != dets[0] or fr[k] != fr[0]:
            raise MotionError(f"determinant/framing changed: {dets[k]}/{fr[k]} "
                              f"against {dets[0]}/{fr[0]}", k)
    return KnotIsotopy(frames, dets, fr, path)


def permuted_knots(b, knots):
    """The knots in slot order after the motion of *b*."""
    inv = perm_inverse(to_permutation(b))
    return [knots[inv[s]] for s in range(len(knots))]


# -- export ---------------------------------------------------------------------

def export_animation(isotopy, directory, obj=False):
    """One knot JSON per frame plus ``index.json``; optionally OBJ line files."""
    os.makedirs(directory, exist_ok=True)
    entries = []
    for k, f in enumerate(isotopy.frames):
        name = f"frame_{k:04d}.json"
        with open(os.path.join(directory, name), "w") as fh:
            json.dump(knot_to_json(f), fh)
        entry = {"frame": k, "knot": name,
                 "determinant": isotopy.determinants[k], "framing": isotopy.framings[k]}
        if isotopy.path is not None:
            entry["cubes"] = config_to_json(isotopy.path.frames[k])["cubes"]
        if obj:
            entry["obj"] = f"frame_{k:04d}.obj"
            with open(os.path.join(directory, entry["obj"]), "w") as fh:
                fh.write(to_obj(f))
        entries.append(entry)
    index = {"schema": "cubeknot/1", "braid": str(isotopy.path.braid) if isotopy.path else None,
             "strands": isotopy.path.braid.strands if isotopy.path else None,
             "frames": entries}
    with open(os.path.join(directory, "index.json"), "w") as fh:
        json.dump(index, fh, indent=1)
    return index


def to_obj(f):
    """Wavefront OBJ with the core as a single polyline (floats, for viewing only)."""
    lines = [f"v {float(x):.9g} {float(y):.9g} {float(z):.9g}" for x, y, z in f.vertices]
    lines.append("l " + " ".join(str(i + 1) for i in range(len(f.vertices))))
    return "\n".join(lines) + "\n"
