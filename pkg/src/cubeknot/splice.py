"""Symbolic splice trees of long-knot complements and the homotopy type of the
corresponding component of the knot space.

Grammar (s-expressions, whitespace separated)::

    tree := (unknot)
          | (prime SYMBOL)
          | (torus P Q)                 P, Q coprime, |P|, |Q| >= 2
          | (sum TREE TREE ...)
          | (cable P Q TREE)            P, Q coprime
          | (hyperbolic LABEL TREE ...)

Sums are flattened and lose their unknot summands while parsing; a sum left
with one summand is that summand, with none the unknot.  Summands of a sum
are kept in a canonical order, so trees that differ only by reordering a sum
compare equal.  Summands count as isotopic exactly when they are equal as
trees.
"""
import math
import re
from dataclasses import dataclass


class SpliceError(ValueError):
    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at offset {pos})")
        self.pos = pos


# -- trees ------------------------------------------------------------------------

@dataclass(frozen=True)
class Unknot:
    def sexpr(self):
        return "(unknot)"


@dataclass(frozen=True)
class PrimeLeaf:
    symbol: str

    def sexpr(self):
        return f"(prime {self.symbol})"


@dataclass(frozen=True)
class TorusKnot:
    p: int
    q: int

    def __post_init__(self):
        if math.gcd(self.p, self.q) != 1 or min(abs(self.p), abs(self.q)) < 2:
            raise SpliceError(f"torus knot needs coprime p, q with |p|, |q| >= 2, got {self.p}, {self.q}")

    def sexpr(self):
        return f"(torus {self.p} {self.q})"


@dataclass(frozen=True)
class ConnectedSum:
    children: tuple

    def __post_init__(self):
        children = tuple(self.children)
        if len(children) < 2:
            raise SpliceError("a connected sum needs at least two summands")
        for c in children:
            if isinstance(c, (ConnectedSum, Unknot)):
                raise SpliceError("summands of a sum are never sums or unknots")
        object.__setattr__(self, "children", tuple(sorted(children, key=lambda c: c.sexpr())))

    def sexpr(self):
        return "(sum " + " ".join(c.sexpr() for c in self.children) + ")"


@dataclass(frozen=True)
class Cable:
    p: int
    q: int
    child: object

    def __post_init__(self):
        if math.gcd(self.p, self.q) != 1:
            raise SpliceError(f"cable parameters must be coprime, got {self.p}, {self.q}")

    def sexpr(self):
        return f"(cable {self.p} {self.q} {self.child.sexpr()})"


@dataclass(frozen=True)
class HyperbolicSatellite:
    label: str
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def sexpr(self):
        return " ".join(["(hyperbolic", self.label, *(c.sexpr() for c in self.children)]) + ")"


def connected_sum(*trees):
    """Sum with flattening and unknot removal."""
    flat = []
    for t in trees:
        if isinstance(t, ConnectedSum):
            flat.extend(t.children)
        elif not isinstance(t, Unknot):
            flat.append(t)
    if not flat:
        return Unknot()
    if len(flat) == 1:
        return flat[0]
    return ConnectedSum(tuple(flat))


# -- parser ---------------------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokenize(text):
    pos = 0
    out = []
    while True:
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start))
        pos = m.end()
    if text[pos:].strip():
        raise SpliceError("unexpected character", pos)
    return out


def _int(tok, pos):
    try:
        return int(tok)
    except ValueError:
        raise SpliceError(f"expected an integer, got {tok!r}", pos) from None


def parse_tree(text):
    tokens = _tokenize(text)
    i = 0

    def expect(tok=None):
        nonlocal i
        if i >= len(tokens):
            raise SpliceError("unexpected end of input", len(text))
        t, p = tokens[i]
        if tok is not None and t != tok:
            raise SpliceError(f"expected {tok!r}, got {t!r}", p)
        i += 1
        return t, p

    def atom():
        t, p = expect()
        if t in "()":
            raise SpliceError(f"expected a symbol, got {t!r}", p)
        return t, p

    def node():
        nonlocal i
        _, start = expect("(")
        head, hp = atom()
        try:
            if head == "unknot":
                result = Unknot()
            elif head == "prime":
                result = PrimeLeaf(atom()[0])
            elif head == "torus":
                (p, pp), (q, qp) = atom(), atom()
                result = TorusKnot(_int(p, pp), _int(q, qp))
            elif head == "cable":
                (p, pp), (q, qp) = atom(), atom()
                pi, qi = _int(p, pp), _int(q, qp)
                result = Cable(pi, qi, node())
            elif head in ("sum", "hyperbolic"):
                label = atom()[0] if head == "hyperbolic" else None
                kids = []
                while i < len(tokens) and tokens[i][0] == "(":
                    kids.append(node())
                if head == "hyperbolic":
                    result = HyperbolicSatellite(label, tuple(kids))
                else:
                    if len(kids) < 2:
                        raise SpliceError("a sum needs at least two summands")
                    result = connected_sum(*kids)
            else:
                raise SpliceError(f"unknown node kind {head!r}", hp)
        except SpliceError as exc:
            if exc.pos is None:
                raise SpliceError(str(exc), start) from None
            raise
        expect(")")
        return result

    tree = node()
    if i != len(tokens):
        raise SpliceError("trailing input", tokens[i][1])
    return tree


# -- Sigma_f -------------------------------------------------------------------------

def sigma_partition(children):
    """Classes of equal summands (1-based, in order of first appearance) and
    the order of the group of permutations preserving them."""
    classes = {}
    for k, c in enumerate(children, 1):
        classes.setdefault(c, []).append(k)
    partition = tuple(tuple(v) for v in classes.values())
    order = math.prod(math.factorial(len(v)) for v in partition)
    return partition, order


# -- homotopy types --------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    def to_json(self):
        return {"type": "Point"}


@dataclass(frozen=True)
class Circle:
    def to_json(self):
        return {"type": "Circle"}


@dataclass(frozen=True)
class Product:
    factors: tuple

    def to_json(self):
        return {"type": "Product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class CubesQuotient:
    """``(C_2(n) x prod factors) / Sigma_f``."""
    n: int
    partition: tuple
    factors: tuple
    sigma_order: int

    def to_json(self):
        return {"type": "CubesQuotient", "n": self.n,
                "partition": [list(c) for c in self.partition],
                "sigma_order": self.sigma_order,
                "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class FibrationOverTorus:
    """A bundle over ``S^1 x S^1`` with fibre ``prod fiber``; the monodromy is not computed."""
    fiber: tuple
    monodromy: str

    def to_json(self):
        return {"type": "FibrationOverTorus", "fiber": [f.to_json() for f in self.fiber],
                "monodromy": {"type": "Opaque", "symbol": self.monodromy}}


@dataclass(frozen=True)
class Opaque:
    symbol: str

    def to_json(self):
        return {"type": "Opaque", "symbol": self.symbol}


def homotopy_type(t):
    if isinstance(t, Unknot):
        return Point()
    if isinstance(t, PrimeLeaf):
        return Opaque(t.symbol)
    if isinstance(t, TorusKnot):
        return Opaque(f"T({t.p},{t.q})")
    if isinstance(t, Cable):
        return Product((Circle(), homotopy_type(t.child)))
    if isinstance(t, ConnectedSum):
        partition, order = sigma_partition(t.children)
        return CubesQuotient(len(t.children), partition,
                             tuple(homotopy_type(c) for c in t.children), order)
    if isinstance(t, HyperbolicSatellite):
        return FibrationOverTorus(tuple(homotopy_type(c) for c in t.children),
                                  f"monodromy[{t.label}]")
    raise SpliceError(f"not a splice tree: {t!r}")


def prime_summand_count(t):
    if isinstance(t, Unknot):
        return 0
    if isinstance(t, ConnectedSum):
        return len(t.children)
    return 1


# -- fundamental group -----------------------------------------------------------------

@dataclass(frozen=True)
class Pi1Record:
    """Symbolic description of pi_1 of a component.

    ``kind`` is ``trivial``, ``extension`` (kernel factors, quotient Sigma_f),
    ``product`` (factors) or ``opaque``.
    """
    kind: str
    kernel: tuple = ()
    quotient_order: int = 1
    partition: tuple = ()
    symbol: str = ""

    def to_json(self):
        out = {"type": "Pi1", "kind": self.kind}
        if self.kind == "extension":
            out.update(kernel=list(self.kernel),
                       quotient={"symbol": "Sigma_f", "order": self.quotient_order,
                                 "partition": [list(c) for c in self.partition]},
                       sequence=" -> ".join(["0", " x ".join(self.kernel), "pi1(K_f)",
                                             "Sigma_f", "0"]))
        elif self.kind == "product":
            out["factors"] = list(self.kernel)
        elif self.kind == "opaque":
            out["symbol"] = self.symbol
        return out


def _pi1_symbol(t):
    return f"pi1(K{t.sexpr()})"


def pi1_extension(t):
    if isinstance(t, Unknot):
        return Pi1Record("trivial")
    if isinstance(t, ConnectedSum):
        partition, order = sigma_partition(t.children)
        kernel = (f"PB_{len(t.children)}",) + tuple(_pi1_symbol(c) for c in t.children)
        return Pi1Record("extension", kernel, order, partition)
    if isinstance(t, Cable):
        return Pi1Record("product", ("Z", _pi1_symbol(t.child)))
    return Pi1Record("opaque", symbol=_pi1_symbol(t))


def tree_to_json(t):
    return {"type": type(t).__name__, "sexpr": t.sexpr()}
