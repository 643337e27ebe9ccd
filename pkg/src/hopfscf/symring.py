"""Minimal Sym in the h basis: the abelianization comm and generating-set ranks."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm

from .compositions import compositions_of
from .nsym import NSymElem, convert
from .qsym import _add_term
from .scalars import ONE, ScalarQT


class Partition(tuple):
    """Weakly decreasing positive parts."""

    __slots__ = ()

    def __new__(cls, parts: tuple[int, ...] | list[int] = ()) -> "Partition":
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return sum(1 for p in self if p == i)


def partitions_of(n: int):
    """All partitions of n, largest part first."""

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield Partition(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


def rearrangement_count(lam: Partition) -> Fraction:
    """Number of compositions rearranging to lam: len(lam)! / prod m_i!."""
    out = factorial(len(lam))
    for part in set(lam):
        out //= factorial(lam.multiplicity(part))
    return Fraction(out)


class SymElem:
    """Element of Sym written in the h basis."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for lam, coeff in (terms or {}).items():
            coeff = ScalarQT.wrap(coeff)
            if not coeff.is_zero():
                self.terms[Partition(lam)] = coeff

    @classmethod
    def h(cls, parts) -> "SymElem":
        return cls({Partition(parts): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> "SymElem":
        c = ScalarQT.wrap(c)
        return SymElem({k: v * c for k, v in self.terms.items()})

    def __add__(self, other: "SymElem") -> "SymElem":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_term(out, k, v)
        return SymElem(out)

    def __sub__(self, other: "SymElem") -> "SymElem":
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, SymElem):
            return self.scale(other)
        out: dict[Partition, ScalarQT] = {}
        for la, va in self.terms.items():
            for lb, vb in other.terms.items():
                _add_term(out, Partition(tuple(la) + tuple(lb)), va * vb)
        return SymElem(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymElem):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[k]})*h{tuple(k)}" for k in sorted(self.terms)
        )

    def to_json_dict(self) -> dict:
        return {
            "basis": "h",
            "terms": [
                {"comp": list(lam), "coeff": str(self.terms[lam])}
                for lam in sorted(self.terms)
            ],
        }


def comm(x: NSymElem) -> SymElem:
    """The surjection onto Sym: H_alpha to h_{lambda(alpha)}, linearly."""
    h = convert(x, "H")
    out: dict[Partition, ScalarQT] = {}
    for comp, coeff in h.terms.items():
        _add_term(out, Partition(comp.partition()), coeff)
    return SymElem(out)


def _rank_of_rational_rows(rows: list[list[Fraction]]) -> int:
    """Exact rank over Q by fraction-free elimination on cleared rows."""
    mat: list[list[int]] = []
    for row in rows:
        denom = 1
        for x in row:
            denom = lcm(denom, x.denominator)
        mat.append([int(x * denom) for x in row])
    rank = 0
    n_cols = len(mat[0]) if mat else 0
    row_idx = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row_idx, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row_idx], mat[pivot] = mat[pivot], mat[row_idx]
        lead = mat[row_idx][col]
        for r in range(row_idx + 1, len(mat)):
            if mat[r][col]:
                factor = mat[r][col]
                mat[r] = [lead * a - factor * b for a, b in zip(mat[r], mat[row_idx])]
        row_idx += 1
        rank += 1
        if row_idx == len(mat):
            break
    return rank


def _bhat_numeric(parts, a: Fraction, b: Fraction) -> NSymElem:
    from .nsym import Bhat, specialize

    return specialize(convert(Bhat(parts), "H"), a, b)


def generating_set_rank(a, b, n_max: int) -> dict:
    """Rank sweep for the degree-n spans of Bhat(a,b) products.

    For NSym_n the products over compositions of n are the Bhat(a,b)_alpha
    themselves (the basis is multiplicative); their H-expansions should have
    rank 2^{n-1}.  For Sym_n the products of comm images over partitions
    should have rank p(n).
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        raise ValueError("a must be nonzero: the triangular diagonal vanishes at a = 0")
    report: dict = {"a": str(a), "b": str(b), "degrees": []}
    for n in range(1, n_max + 1):
        comps = list(compositions_of(n))
        rows = []
        for alpha in comps:
            expansion = _bhat_numeric(alpha, a, b)
            rows.append(
                [expansion.coefficient(beta).eval_at(0, 0) for beta in comps]
            )
        nsym_rank = _rank_of_rational_rows(rows)

        parts_n = list(partitions_of(n))
        index = {lam: i for i, lam in enumerate(parts_n)}
        sym_rows = []
        for lam in parts_n:
            prod = SymElem({Partition(()): ONE})
            for part in lam:
                prod = prod * comm(_bhat_numeric((part,), a, b))
            row = [Fraction(0)] * len(parts_n)
            for mu, coeff in prod.terms.items():
                row[index[mu]] = coeff.eval_at(0, 0)
            sym_rows.append(row)
        sym_rank = _rank_of_rational_rows(sym_rows)

        report["degrees"].append(
            {
                "n": n,
                "nsym_rank": nsym_rank,
                "nsym_expected": 1 << (n - 1),
                "sym_rank": sym_rank,
                "sym_expected": len(parts_n),
            }
        )
    report["full_rank"] = all(
        d["nsym_rank"] == d["nsym_expected"] and d["sym_rank"] == d["sym_expected"]
        for d in report["degrees"]
    )
    return report
