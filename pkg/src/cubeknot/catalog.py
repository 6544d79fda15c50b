"""Built-in long knots shipped with the package.

The polygons were produced by ``tools/make_catalog.py``: a sampled closed
knot, cut open at its highest strand and fitted into ``[-1, 1] x D^2`` with
thin collars at both ends.
"""
import json
from dataclasses import replace
from functools import lru_cache
from importlib import resources

from .tube import knot_from_json, unknot

NAMES = ("trefoil", "trefoil_mirror", "figure8", "figure8_mirror")

# determinants of the shipped knots, as reported by the diagram oracle
DETERMINANTS = {"unknot": 1, "trefoil": 3, "trefoil_mirror": 3, "figure8": 5, "figure8_mirror": 5}


def names():
    return ("unknot",) + NAMES


@lru_cache(maxsize=None)
def _load(name):
    if name == "unknot":
        return unknot()
    if name not in NAMES:
        raise KeyError(f"no catalog knot named {name!r}; choose from {', '.join(names())}")
    text = resources.files(__package__).joinpath("data").joinpath(f"{name}.json").read_text()
    return knot_from_json(json.loads(text))


def load(name, framing=0):
    """Catalog knot *name* with the given framing number."""
    knot = _load(name)
    if framing == knot.framing:
        return knot
    if name == "unknot":
        return unknot(framing)
    return replace(knot, framing=framing)
