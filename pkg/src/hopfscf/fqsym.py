"""Desk-scale FQSym on the F basis: the independent oracle for the A-shuffle laws.

Permutations are tuples in one-line notation.  The product is the shifted
shuffle, the coproduct de-standardizes prefixes and suffixes, and the
projection to QSym reads off descent sets.
"""

from __future__ import annotations

from .compositions import (
    comp_of_set,
    descent_set,
    shifted_shuffle,
    standardize,
)
from .qsym import QSymElem, _add_term
from .scalars import ONE, ScalarQT

Word = tuple[int, ...]


def _check_permutation(word: Word) -> Word:
    word = tuple(word)
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ValueError(f"{word} is not a permutation in one-line notation")
    return word


class FQSymElem:
    """Linear combination of F_w over permutation words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for word, coeff in (terms or {}).items():
            coeff = ScalarQT.wrap(coeff)
            if not coeff.is_zero():
                self.terms[_check_permutation(word)] = coeff

    @classmethod
    def F(cls, word: Word) -> "FQSymElem":
        return cls({tuple(word): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> "FQSymElem":
        c = ScalarQT.wrap(c)
        return FQSymElem({w: v * c for w, v in self.terms.items()})

    def __add__(self, other: "FQSymElem") -> "FQSymElem":
        out = dict(self.terms)
        for w, v in other.terms.items():
            _add_term(out, w, v)
        return FQSymElem(out)

    def __sub__(self, other: "FQSymElem") -> "FQSymElem":
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, FQSymElem):
            return product_F(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FQSymElem):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[w]})*F{''.join(map(str, w)) or 'e'}"
            for w in sorted(self.terms)
        )


def product_F(x: FQSymElem, y: FQSymElem) -> FQSymElem:
    """F_u F_v = sum of F_w over the shuffle of u with the shifted v."""
    out: dict[Word, ScalarQT] = {}
    for u, vu in x.terms.items():
        for v, vv in y.terms.items():
            coeff = vu * vv
            for word, mult in shifted_shuffle(u, v, len(u)).items():
                _add_term(out, word, coeff * mult)
    return FQSymElem(out)


def coproduct_F(word: Word) -> list[tuple[Word, Word]]:
    """The n+1 standardized prefix/suffix splits of F_w."""
    word = _check_permutation(word)
    n = len(word)
    return [
        (standardize(word[:k]), standardize(word[k:])) for k in range(n + 1)
    ]


def coproduct(x: FQSymElem) -> dict[tuple[Word, Word], ScalarQT]:
    out: dict[tuple[Word, Word], ScalarQT] = {}
    for word, coeff in x.terms.items():
        for pair in coproduct_F(word):
            _add_term(out, pair, coeff)
    return out


def project_pi(x: FQSymElem) -> QSymElem:
    """The Hopf surjection onto QSym: F_w to L indexed by the descent set."""
    terms: dict = {}
    for word, coeff in x.terms.items():
        _add_term(terms, comp_of_set(descent_set(word)), coeff)
    return QSymElem("L", terms)
