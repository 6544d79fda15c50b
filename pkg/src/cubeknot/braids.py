"""Artin braid words, their permutations, the Artin action on free groups,
and framed braids.

Letters are stored as signed integers: ``+i`` is ``s_i`` (or ``x_i``) and
``-i`` its inverse.  Permutations are tuples of 0-based images, ``p[j]`` is
where ``j`` goes; products compose as functions, ``(p * q)(j) = p(q(j))``.

Convention for the Artin action (rightmost letter acts first)::

    s_q :  x_q -> x_q x_{q+1} x_q^-1,   x_{q+1} -> x_q,   x_k -> x_k otherwise.
"""
import re
from dataclasses import dataclass


class BraidError(ValueError):
    pass


# -- permutations ---------------------------------------------------------------

def perm_identity(n):
    return tuple(range(n))


def perm_compose(p, q):
    """``p o q``: apply *q* first."""
    return tuple(p[j] for j in q)


def perm_inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def transposition(n, i, j):
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def cycles(p):
    """Cycle notation with 1-based points, e.g. ``(1 3)``; ``()`` for the identity."""
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, j = [], start
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


# -- free groups --------------------------------------------------------------------

def _reduce(letters):
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class FreeGroupWord:
    """Freely reduced word in ``x_1 .. x_n``."""
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        if any(a == 0 for a in letters):
            raise BraidError("generator indices start at 1")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def generator(cls, k):
        return cls((k,))

    def __mul__(self, other):
        return FreeGroupWord(self.letters + other.letters)

    def inverse(self):
        return FreeGroupWord(tuple(-a for a in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def rank_needed(self):
        return max((abs(a) for a in self.letters), default=0)

    def cyclic_reduction(self):
        letters = self.letters
        while len(letters) > 1 and letters[0] == -letters[-1]:
            letters = letters[1:-1]
        return FreeGroupWord(letters)

    def __str__(self):
        return _format(self.letters, "x") or "1"


def is_conjugate(u, v):
    """Conjugacy test in a free group: cyclic reductions agree up to rotation."""
    a, b = u.cyclic_reduction().letters, v.cyclic_reduction().letters
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[i:i + len(b)] == b for i in range(len(a)))


# -- braid words ----------------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        word = tuple(int(g) for g in self.word)
        for g in word:
            if not 1 <= abs(g) <= self.strands - 1:
                raise BraidError(f"generator s{abs(g)} out of range for {self.strands} strands")
        object.__setattr__(self, "word", word)

    def __mul__(self, other):
        if other.strands != self.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands, self.word + other.word)

    def inverse(self):
        return BraidWord(self.strands, tuple(-g for g in reversed(self.word)))

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return _format(self.word, "s")


def _format(letters, symbol):
    return " ".join(f"{symbol}{abs(a)}" + ("^-1" if a < 0 else "") for a in letters)


_TOKEN = re.compile(r"^([a-zA-Z])(\d+)(?:\^(-?\d+))?$")


def _parse_letters(text, symbol):
    letters = []
    for tok in text.replace(",", " ").split():
        if tok in ("1", "e"):
            continue
        m = _TOKEN.match(tok)
        if not m or m.group(1).lower() != symbol:
            raise BraidError(f"bad token {tok!r}; expected like {symbol}2 or {symbol}2^-1")
        k, e = int(m.group(2)), int(m.group(3) or 1)
        if k < 1:
            raise BraidError(f"bad index in {tok!r}")
        letters.extend([k if e > 0 else -k] * abs(e))
    return tuple(letters)


def parse_braid(text, strands=None):
    """Parse ``"s1 s2^-1 s1"``.  Exponents other than +-1 repeat the letter.

    Without *strands* the smallest braid group containing the word is used.
    """
    word = _parse_letters(text, "s")
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    return BraidWord(strands, word)


def parse_free_word(text):
    return FreeGroupWord(_parse_letters(text, "x"))


# -- homomorphisms ------------------------------------------------------------------

def to_permutation(b):
    p = perm_identity(b.strands)
    for g in b.word:
        q = abs(g) - 1
        p = perm_compose(p, transposition(b.strands, q, q + 1))
    return p


def is_pure(b):
    return to_permutation(b) == perm_identity(b.strands)


def _generator_image(g, k):
    """Image of the letter ``x_k`` under ``s_|g|^sign(g)``, as a letter tuple."""
    q = abs(g)
    if g > 0:
        if k == q:
            return (q, q + 1, -q)
        if k == q + 1:
            return (q,)
    else:
        if k == q:
            return (q + 1,)
        if k == q + 1:
            return (-(q + 1), q, q + 1)
    return (k,)


def _act_letter(g, letters):
    out = []
    for a in letters:
        img = _generator_image(g, abs(a))
        out.extend(img if a > 0 else tuple(-c for c in reversed(img)))
    return _reduce(out)


def artin_action(b, w):
    """Image of the free word *w* under the automorphism of braid *b*."""
    if isinstance(w, str):
        w = parse_free_word(w)
    if w.rank_needed() > b.strands:
        raise BraidError(f"word uses x{w.rank_needed()} but the braid has {b.strands} strands")
    letters = w.letters
    for g in reversed(b.word):
        letters = _act_letter(g, letters)
    return FreeGroupWord(letters)


# -- framed braids ------------------------------------------------------------------

@dataclass(frozen=True)
class FramedBraid:
    braid: BraidWord
    windings: tuple = None

    def __post_init__(self):
        w = self.windings
        if w is None:
            w = (0,) * self.braid.strands
        w = tuple(int(x) for x in w)
        if len(w) != self.braid.strands:
            raise BraidError("one winding number per strand")
        object.__setattr__(self, "windings", w)


def act_on_windings(p, v):
    """``p . (v_1, .., v_n) = (v_{p^-1(1)}, .., v_{p^-1(n)})``."""
    inv = perm_inverse(p)
    return tuple(v[inv[k]] for k in range(len(v)))


def compose_framed(a, b):
    if a.braid.strands != b.braid.strands:
        raise BraidError("strand counts differ")
    shifted = act_on_windings(to_permutation(a.braid), b.windings)
    return FramedBraid(a.braid * b.braid, tuple(x + y for x, y in zip(a.windings, shifted)))


def winding_hom(fb):
    """``W``: a framed braid to its element ``(permutation, windings)`` of S_n x| Z^n."""
    return to_permutation(fb.braid), fb.windings


def semidirect_product(x, y):
    (p, v), (q, w) = x, y
    return perm_compose(p, q), tuple(a + c for a, c in zip(v, act_on_windings(p, w)))
