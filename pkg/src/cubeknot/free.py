"""The free little 2-cubes algebra on a set of prime symbols plus a base point.

Elements are labelled configurations.  Two elements are identified when
their normal forms agree: base-point cubes deleted, the remaining
(cube, label) pairs sorted by the canonical cube order.
"""
import re
from collections import Counter
from dataclasses import dataclass

from .cubes import CubeConfig, LittleCube, compose_operad
from .rational import q_str, to_q
from .tube import kappa, unknot

STAR = "*"


class FreeAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class FreeCubesElement:
    config: CubeConfig
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(labels) != len(self.config):
            raise FreeAlgebraError(f"{len(self.config)} cubes but {len(labels)} labels")
        if self.config.dimension != 2:
            raise FreeAlgebraError("elements live over little 2-cubes")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    @classmethod
    def empty(cls):
        return cls(CubeConfig(2, ()), ())

    @classmethod
    def singleton(cls, label):
        return cls(CubeConfig.identity(2), (label,))


@dataclass(frozen=True)
class Pi0Class:
    """A multiset of prime symbols, stored as sorted ``(symbol, count)`` pairs."""
    counts: tuple = ()

    @classmethod
    def from_labels(cls, labels):
        c = Counter(x for x in labels if x != STAR)
        return cls(tuple(sorted(c.items())))

    def __add__(self, other):
        return Pi0Class.from_labels(list(self.elements()) + list(other.elements()))

    def elements(self):
        for sym, k in self.counts:
            yield from [sym] * k

    def as_dict(self):
        return dict(self.counts)


def normalize(e):
    pairs = [(c, lab) for c, lab in zip(e.config, e.labels) if lab != STAR]
    pairs.sort(key=lambda p: p[0].sort_key())
    return FreeCubesElement(CubeConfig(2, tuple(c for c, _ in pairs)), tuple(lab for _, lab in pairs))


def equivalent(e1, e2):
    return normalize(e1) == normalize(e2)


def act(config, elements):
    """Structure map: substitute each element into its cube of *config*."""
    elements = list(elements)
    if len(elements) != len(config):
        raise FreeAlgebraError(f"{len(config)} cubes but {len(elements)} elements")
    cfg = compose_operad(config, [e.config for e in elements])
    return FreeCubesElement(cfg, tuple(lab for e in elements for lab in e.labels))


def pi0(e):
    return Pi0Class.from_labels(e.labels)


def evaluate(e, registry, **kw):
    """Realize *e* as a knot: kappa with base-point cubes carrying the unknot.

    Primality of the registered knots is taken on trust.
    """
    knots = []
    for lab in e.labels:
        if lab == STAR:
            knots.append(unknot())
        elif lab in registry:
            knots.append(registry[lab])
        else:
            raise FreeAlgebraError(f"label {lab!r} is not in the registry")
    return kappa(e.config, knots, **kw)


# -- text format ------------------------------------------------------------------
#
#   element := "(" cube* ")" "[" label ("," label)* "]"
#   cube    := "[" q "," q "]" "x" "[" q "," q "]"
#
# e.g.  ([-3/5,-1/5]x[0,2/5] [1/5,3/5]x[0,2/5])[a,*]

_CUBE = re.compile(r"\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]\s*x\s*\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]")
_ELEMENT = re.compile(r"^\s*\((.*)\)\s*\[(.*)\]\s*$", re.S)


def format_element(e):
    cubes = " ".join(
        "x".join(f"[{q_str(lo)},{q_str(hi)}]" for lo, hi in c.intervals()) for c in e.config)
    return f"({cubes})[{','.join(e.labels)}]"


def parse_element(text):
    m = _ELEMENT.match(text)
    if not m:
        raise FreeAlgebraError("expected '(cubes...)[labels...]'")
    body, labels_text = m.groups()
    cubes = []
    pos = 0
    for cm in _CUBE.finditer(body):
        if body[pos:cm.start()].strip():
            raise FreeAlgebraError(f"unexpected text {body[pos:cm.start()].strip()!r}")
        x0, x1, y0, y1 = (to_q(s) for s in cm.groups())
        cubes.append(LittleCube.from_intervals((x0, x1), (y0, y1)))
        pos = cm.end()
    if body[pos:].strip():
        raise FreeAlgebraError(f"unexpected text {body[pos:].strip()!r}")
    labels = [s.strip() for s in labels_text.split(",")] if labels_text.strip() else []
    if any(not s for s in labels):
        raise FreeAlgebraError("empty label")
    return FreeCubesElement(CubeConfig(2, tuple(cubes)), tuple(labels))
