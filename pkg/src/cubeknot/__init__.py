"""Exact little cubes operads acting on PL framed long knots.

Submodules: ``cubes`` (the operad), ``tube`` (framed tube knots and kappa),
``invariants`` (diagram oracles), ``free`` (the free 2-cubes algebra),
``braids``, ``motions`` (braid monodromy), ``splice`` (symbolic splice trees)
and ``cli``.
"""
from .braids import BraidWord, FramedBraid, FreeGroupWord, artin_action, parse_braid, to_permutation
from .catalog import load
from .cubes import (CubeConfig, CubeError, LittleCube, ProjectionData, base_config,
                    compose_operad, permute, project)
from .invariants import (determinant, framing_number, knot_determinant, knot_diagram,
                         linking_number, project_to_diagram, writhe)
from .motions import cube_motion, monodromy, overlapping_projections
from .rational import Q, to_q
from .tube import (FramedTubeKnot, PolyLine, TubeError, TubeMap, apply_tube, build_tube_map,
                   kappa, mu_rescale, unknot)

__all__ = [
    "CubeConfig", "CubeError", "LittleCube", "ProjectionData", "base_config",
    "compose_operad", "permute", "project", "determinant", "framing_number",
    "knot_determinant", "knot_diagram", "linking_number", "project_to_diagram",
    "writhe", "Q", "to_q", "FramedTubeKnot", "PolyLine", "TubeError", "TubeMap",
    "apply_tube", "build_tube_map", "kappa", "mu_rescale", "unknot",
    "BraidWord", "FramedBraid", "FreeGroupWord", "artin_action", "parse_braid",
    "to_permutation", "load", "cube_motion", "monodromy", "overlapping_projections",
]
