"""NSym over the q,t fraction field: H, Lambda, R, E*, B(q,t), Bhat(q,t).

H is the free-algebra basis and every conversion is defined against it.  The
closed product rules (near-concatenation for B, concatenation for Bhat) are
fast paths; their agreement with the H route is asserted in the test suite
rather than assumed.
"""

from __future__ import annotations

import itertools

from .compositions import (
    Composition,
    SubsetLabel,
    comp_of_set,
    iter_submasks,
    near_concat,
    preshuffle,
    run_markers,
    runs_composition,
    set_of_comp,
)
from .qsym import QSymElem, convert as qsym_convert, _add_term
from .scalars import ONE, Q, T, ScalarQT, parse_scalar, rational

BASES = ("H", "Lambda", "R", "Estar", "B", "Bhat")


def _full_mask(n: int) -> int:
    return (1 << (n - 1)) - 1 if n >= 1 else 0


class NSymElem:
    """A finite linear combination of basis labels in a single basis."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms=None):
        if basis not in BASES:
            raise ValueError(f"unknown NSym basis {basis!r}")
        self.basis = basis
        self.terms = {}
        for comp, coeff in (terms or {}).items():
            coeff = ScalarQT.wrap(coeff)
            if not coeff.is_zero():
                self.terms[Composition(comp)] = coeff

    @classmethod
    def basis_elem(cls, basis: str, parts) -> "NSymElem":
        return cls(basis, {Composition(parts): ONE})

    @classmethod
    def zero(cls, basis: str = "H") -> "NSymElem":
        return cls(basis, {})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, parts) -> ScalarQT:
        from .scalars import ZERO

        return self.terms.get(Composition(parts), ZERO)

    def scale(self, c) -> "NSymElem":
        c = ScalarQT.wrap(c)
        return NSymElem(self.basis, {a: v * c for a, v in self.terms.items()})

    def __add__(self, other: "NSymElem") -> "NSymElem":
        if self.basis == other.basis:
            out = dict(self.terms)
            for a, v in other.terms.items():
                _add_term(out, a, v)
            return NSymElem(self.basis, out)
        return convert(self, "H") + convert(other, "H")

    def __sub__(self, other: "NSymElem") -> "NSymElem":
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, NSymElem):
            return product(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, NSymElem):
            return NotImplemented
        a = self if self.basis == "H" else convert(self, "H")
        b = other if other.basis == "H" else convert(other, "H")
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[k] == b.terms[k] for k in a.terms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[c]})*{self.basis}{c!r}" for c in sorted(self.terms, key=tuple)
        )

    def to_json_dict(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [
                {"comp": list(comp), "coeff": str(self.terms[comp])}
                for comp in sorted(self.terms, key=tuple)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "NSymElem":
        terms = {
            Composition(item["comp"]): parse_scalar(item["coeff"])
            for item in data["terms"]
        }
        return cls(data["basis"], terms)


def H(parts) -> NSymElem:
    return NSymElem.basis_elem("H", parts)


def Lam(parts) -> NSymElem:
    return NSymElem.basis_elem("Lambda", parts)


def R(parts) -> NSymElem:
    return NSymElem.basis_elem("R", parts)


def Estar(parts) -> NSymElem:
    return NSymElem.basis_elem("Estar", parts)


def B(parts) -> NSymElem:
    return NSymElem.basis_elem("B", parts)


def Bhat(parts) -> NSymElem:
    return NSymElem.basis_elem("Bhat", parts)


# ---------------------------------------------------------------------------
# Transitions against H (subset level, fixed degree n)


def b_to_H_masks(n: int, imask: int, qs: ScalarQT = Q, ts: ScalarQT = T) -> dict[int, ScalarQT]:
    """B(q,t)_{comp(I)} = sum over J with I u J = [n-1] of q^{|I\\J|} t^{|I n J|} H_{comp(J)}."""
    full = _full_mask(n)
    base = full & ~imask
    size_i = imask.bit_count()
    out: dict[int, ScalarQT] = {}
    for sub in iter_submasks(imask):
        meet = sub.bit_count()
        out[base | sub] = qs ** (size_i - meet) * ts**meet
    return out


def h_to_B_masks(n: int, imask: int) -> dict[int, ScalarQT]:
    """Inverse transition: H_{comp(I)} = sum over J disjoint from I of
    q^{|I|-(n-1)} (-t)^{(n-1)-|I|-|J|} B(q,t)_{comp(J)}."""
    size_i = imask.bit_count()
    out: dict[int, ScalarQT] = {}
    for jmask in iter_submasks(_full_mask(n) & ~imask):
        size_j = jmask.bit_count()
        out[jmask] = Q ** (size_i - (n - 1)) * (-T) ** ((n - 1) - size_i - size_j)
    return out


def b_matrix_entry(n: int, imask: int, jmask: int) -> ScalarQT:
    """The transition-matrix entry M_{I,J} = q^{|J\\I|} t^{|J n I|} [I u J = [n-1]]."""
    if (imask | jmask) != _full_mask(n):
        from .scalars import ZERO

        return ZERO
    return Q ** (jmask & ~imask).bit_count() * T ** (jmask & imask).bit_count()


def b_inverse_entry(n: int, imask: int, jmask: int) -> ScalarQT:
    """The inverse-matrix entry N_{I,J} = q^{|J|-(n-1)} (-t)^{(n-1)-|I|-|J|} [I n J empty]."""
    if n == 0:
        return ONE
    if imask & jmask:
        from .scalars import ZERO

        return ZERO
    si, sj = imask.bit_count(), jmask.bit_count()
    return Q ** (sj - (n - 1)) * (-T) ** ((n - 1) - si - sj)


def _lambda_to_H_masks(n: int, smask: int) -> dict[int, ScalarQT]:
    full = _full_mask(n)
    out = {}
    for sub in iter_submasks(full & ~smask):
        jmask = smask | sub
        out[jmask] = rational((-1) ** ((n - 1) - jmask.bit_count()))
    return out


def _r_to_H_masks(n: int, smask: int) -> dict[int, ScalarQT]:
    out = {}
    for tmask in iter_submasks(smask):
        out[tmask] = rational((-1) ** (smask.bit_count() - tmask.bit_count()))
    return out


def _estar_to_H_masks(n: int, smask: int) -> dict[int, ScalarQT]:
    full = _full_mask(n)
    out = {}
    for sub in iter_submasks(full & ~smask):
        out[smask | sub] = rational((-1) ** sub.bit_count())
    return out


def _to_H_masks(basis: str, n: int, mask: int) -> dict[int, ScalarQT]:
    if n == 0:
        return {0: ONE}  # all bases share the unit
    if basis == "H":
        return {mask: ONE}
    if basis == "Lambda":
        return _lambda_to_H_masks(n, mask)
    if basis == "R":
        return _r_to_H_masks(n, mask)
    if basis == "Estar":
        return _estar_to_H_masks(n, mask)
    if basis == "B":
        return b_to_H_masks(n, mask)
    if basis == "Bhat":
        return b_to_H_masks(n, _full_mask(n) & ~mask)
    raise AssertionError(basis)


def _from_H_masks(target: str, n: int, mask: int) -> dict[int, ScalarQT]:
    if n == 0:
        return {0: ONE}
    full = _full_mask(n)
    if target == "H":
        return {mask: ONE}
    if target == "Lambda":
        # the signed refinement sum is its own inverse
        return _lambda_to_H_masks(n, mask)
    if target == "R":
        return {tmask: ONE for tmask in iter_submasks(mask)}
    if target == "Estar":
        return {mask | sub: ONE for sub in iter_submasks(full & ~mask)}
    if target == "B":
        return h_to_B_masks(n, mask)
    if target == "Bhat":
        return {
            full & ~jmask: coeff for jmask, coeff in h_to_B_masks(n, mask).items()
        }
    raise AssertionError(target)


def convert(x: NSymElem, target: str) -> NSymElem:
    if target not in BASES:
        raise ValueError(f"unknown NSym basis {target!r}")
    if x.basis == target:
        return x
    acc: dict[Composition, ScalarQT] = {}
    for comp, coeff in x.terms.items():
        n = comp.size
        mask = set_of_comp(comp).mask
        for hmask, c1 in _to_H_masks(x.basis, n, mask).items():
            if target == "H":
                _add_term(acc, comp_of_set(SubsetLabel(n, hmask)), coeff * c1)
                continue
            for tmask, c2 in _from_H_masks(target, n, hmask).items():
                _add_term(acc, comp_of_set(SubsetLabel(n, tmask)), coeff * c1 * c2)
    return NSymElem(target, acc)


def specialize(x: NSymElem, q0, t0) -> NSymElem:
    """Evaluate every coefficient at (q, t) = (q0, t0)."""
    out: dict[Composition, ScalarQT] = {}
    for comp, coeff in x.terms.items():
        _add_term(out, comp, rational(coeff.eval_at(q0, t0)))
    return NSymElem(x.basis, out)


# ---------------------------------------------------------------------------
# Product and coproduct


def product(x: NSymElem, y: NSymElem) -> NSymElem:
    if x.basis == y.basis and x.basis in ("H", "B", "Bhat"):
        if x.basis == "B":
            combine = near_concat
        else:
            combine = lambda a, b: Composition(tuple(a) + tuple(b))
        acc: dict[Composition, ScalarQT] = {}
        for ca, va in x.terms.items():
            for cb, vb in y.terms.items():
                _add_term(acc, combine(ca, cb), va * vb)
        return NSymElem(x.basis, acc)
    a, b = convert(x, "H"), convert(y, "H")
    acc = {}
    for ca, va in a.terms.items():
        for cb, vb in b.terms.items():
            _add_term(acc, ca.concat(cb), va * vb)
    return NSymElem("H", acc)


class NSymTensor:
    """A sum of pure tensors NSym (x) NSym, one basis tag per side."""

    __slots__ = ("bases", "terms")

    def __init__(self, bases: tuple[str, str], terms=None):
        for b in bases:
            if b not in BASES:
                raise ValueError(f"unknown NSym basis {b!r}")
        self.bases = bases
        self.terms = {}
        for (ca, cb), coeff in (terms or {}).items():
            coeff = ScalarQT.wrap(coeff)
            if not coeff.is_zero():
                self.terms[(Composition(ca), Composition(cb))] = coeff

    def convert(self, bases: tuple[str, str]) -> "NSymTensor":
        acc: dict[tuple[Composition, Composition], ScalarQT] = {}
        for (ca, cb), coeff in self.terms.items():
            left = convert(NSymElem(self.bases[0], {ca: ONE}), bases[0])
            right = convert(NSymElem(self.bases[1], {cb: ONE}), bases[1])
            for la, va in left.terms.items():
                for lb, vb in right.terms.items():
                    _add_term(acc, (la, lb), coeff * va * vb)
        return NSymTensor(bases, acc)

    def coefficient(self, left, right) -> ScalarQT:
        from .scalars import ZERO

        return self.terms.get((Composition(left), Composition(right)), ZERO)

    def __add__(self, other: "NSymTensor") -> "NSymTensor":
        if self.bases != other.bases:
            return self.convert(("H", "H")) + other.convert(("H", "H"))
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            _add_term(out, key, coeff)
        return NSymTensor(self.bases, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NSymTensor):
            return NotImplemented
        a = self.convert(("H", "H")) if self.bases != ("H", "H") else self
        b = other.convert(("H", "H")) if other.bases != ("H", "H") else other
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[k] == b.terms[k] for k in a.terms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        bits = [
            f"({coeff})*{self.bases[0]}{a!r}(x){self.bases[1]}{b!r}"
            for (a, b), coeff in sorted(self.terms.items())
        ]
        return " + ".join(bits) if bits else "0"


def _coproduct_H_comp(alpha: Composition) -> dict[tuple[Composition, Composition], ScalarQT]:
    """Delta H_alpha by the algebra-map extension of Delta H_n = sum H_i (x) H_j."""
    acc = {(Composition(), Composition()): ONE}
    for part in alpha:
        new: dict[tuple[Composition, Composition], ScalarQT] = {}
        for (la, rb), coeff in acc.items():
            for i in range(part + 1):
                left = la.concat((i,)) if i else la
                right = rb.concat((part - i,)) if part - i else rb
                _add_term(new, (left, right), coeff)
        acc = new
    return acc


def coproduct(x: NSymElem) -> NSymTensor:
    h = convert(x, "H")
    acc: dict[tuple[Composition, Composition], ScalarQT] = {}
    for comp, coeff in h.terms.items():
        for key, c in _coproduct_H_comp(comp).items():
            _add_term(acc, key, coeff * c)
    return NSymTensor(("H", "H"), acc)


def counit(x: NSymElem) -> ScalarQT:
    return convert(x, "H").coefficient(())


# ---------------------------------------------------------------------------
# Structure constants of the B basis


def structure_constant(k: int, K, m: int, I, J) -> ScalarQT:
    """C^K_{I,J}(q,t): the closed sum over admissible selectors A.

    The t^{-|I|-|J|} prefactor goes through the fraction field; polynomiality
    with integer coefficients is asserted by the verification suites, not here.
    """
    n = k - m
    if n < 0:
        raise ValueError(f"m={m} exceeds k={k}")
    K = frozenset(K)
    I_lbl = SubsetLabel.of(m, I)
    J_lbl = SubsetLabel.of(n, J)
    if not K <= set(range(1, k)):
        raise ValueError(f"K={sorted(K)} is not a subset of [{k - 1}]")
    kmask = sum(1 << (i - 1) for i in K)
    total = None
    for A in itertools.combinations(range(1, k + 1), n):
        pre = preshuffle(I_lbl, J_lbl, frozenset(A), m, n)
        _, c2, c = run_markers(A, k)
        if pre.mask & c.mask:
            continue
        if not (pre.mask & kmask) == pre.mask:  # I#J subseteq K
            continue
        if kmask & ~(pre.mask | c.mask):  # K subseteq (I#J) u c(A)
            continue
        e_qt = (kmask & c2.mask).bit_count()
        e_t = (kmask & ~c2.mask).bit_count()
        term = (Q + T) ** e_qt * T**e_t
        total = term if total is None else total + term
    if total is None:
        from .scalars import ZERO

        return ZERO
    return total / T ** (I_lbl.size + J_lbl.size)


def structure_constants_sweep(k: int, m: int, I, J) -> dict[int, ScalarQT]:
    """All C^K_{I,J}(q,t) at once, keyed by the mask of K.

    One pass over the selectors A, distributing each admissible A over the
    interval I#J <= K <= (I#J) u c(A); agrees with structure_constant per K.
    """
    n = k - m
    I_lbl = SubsetLabel.of(m, I)
    J_lbl = SubsetLabel.of(n, J)
    acc: dict[int, ScalarQT] = {}
    for A in itertools.combinations(range(1, k + 1), n):
        pre = preshuffle(I_lbl, J_lbl, frozenset(A), m, n)
        _, c2, c = run_markers(A, k)
        if pre.mask & c.mask:
            continue
        free = c.mask & ~pre.mask
        sub = free
        while True:
            kmask = pre.mask | sub
            e_qt = (kmask & c2.mask).bit_count()
            e_t = (kmask & ~c2.mask).bit_count()
            _add_term(acc, kmask, (Q + T) ** e_qt * T**e_t)
            if sub == 0:
                break
            sub = (sub - 1) & free
    denom = T ** (I_lbl.size + J_lbl.size)
    return {kmask: coeff / denom for kmask, coeff in acc.items()}


def coproduct_B_comp(k: int, K) -> NSymTensor:
    """Delta B(q,t)_{comp(K)} straight from the structure constants."""
    acc: dict[tuple[Composition, Composition], ScalarQT] = {}
    K = frozenset(K)
    for m in range(k + 1):
        n = k - m
        for I in _subsets_upto(m):
            for J in _subsets_upto(n):
                coeff = structure_constant(k, K, m, I, J)
                if coeff.is_zero():
                    continue
                _add_term(
                    acc,
                    (
                        comp_of_set(SubsetLabel.of(m, I)),
                        comp_of_set(SubsetLabel.of(n, J)),
                    ),
                    coeff,
                )
    return NSymTensor(("B", "B"), acc)


def _subsets_upto(m: int):
    for r in range(max(m, 1)):
        yield from (frozenset(c) for c in itertools.combinations(range(1, m), r))


def bhat_coproduct_terms(k: int) -> list[tuple[Composition, Composition, ScalarQT]]:
    """Per-selector terms of Delta Bhat(q,t)_k: one for each A inside [k],
    with weight (q+t)^{|c2(A)|} t^{|c1(A)|} on Bhat_{alpha_A} (x) Bhat_{beta_A}."""
    out = []
    universe = range(1, k + 1)
    for r in range(k + 1):
        for A in itertools.combinations(universe, r):
            c1, c2, _ = run_markers(A, k)
            coeff = (Q + T) ** c2.size * T**c1.size
            alpha = runs_composition(A)
            beta = runs_composition(set(universe) - set(A))
            out.append((alpha, beta, coeff))
    return out


def coproduct_bhat(k: int) -> NSymTensor:
    acc: dict[tuple[Composition, Composition], ScalarQT] = {}
    for alpha, beta, coeff in bhat_coproduct_terms(k):
        _add_term(acc, (alpha, beta), coeff)
    return NSymTensor(("Bhat", "Bhat"), acc)


# ---------------------------------------------------------------------------
# omega, duality pairing, triangularity


def omega(x: NSymElem) -> NSymElem:
    """The involutive anti-homomorphism H_alpha -> Lambda_{alpha reversed}."""
    h = convert(x, "H")
    acc: dict[Composition, ScalarQT] = {}
    for comp, coeff in h.terms.items():
        _add_term(acc, comp.reverse(), coeff)
    return NSymElem("Lambda", acc)


def pairing(f: NSymElem, x: QSymElem) -> ScalarQT:
    """Bilinear extension of (H_alpha, M_beta) = delta_{alpha,beta}."""
    from .scalars import ZERO

    h = convert(f, "H")
    m = qsym_convert(x, "M")
    total = ZERO
    for comp, coeff in h.terms.items():
        other = m.terms.get(comp)
        if other is not None:
            total = total + coeff * other
    return total


def b_dual_in_M(n: int, I) -> QSymElem:
    """B(q,t)*_{comp(I)} expanded in the monomial basis of QSym."""
    imask = SubsetLabel.of(n, I).mask
    terms: dict[Composition, ScalarQT] = {}
    for jmask in iter_submasks(_full_mask(n) & ~imask):
        coeff = b_inverse_entry(n, imask, jmask)
        terms[comp_of_set(SubsetLabel(n, jmask))] = coeff
    return QSymElem("M", terms)


def subset_order_key(n: int, mask: int) -> tuple[int, tuple[int, ...]]:
    """Linear extension used for triangularity: size descending, then lex."""
    label = SubsetLabel(n, mask)
    return (-label.size, label.members)


def b_to_H_matrix_is_triangular(n: int) -> bool:
    """Rows B_{comp(I)} by the complement order, columns H_{comp(J)} by size
    order: lower triangular with nonzero diagonal."""
    full = _full_mask(n)
    order = sorted(range(full + 1), key=lambda m: subset_order_key(n, m))
    col_pos = {mask: i for i, mask in enumerate(order)}
    for row_pos, imask in enumerate(sorted(range(full + 1), key=lambda m: subset_order_key(n, full & ~m))):
        expansion = b_to_H_masks(n, imask)
        diag = expansion.get(full & ~imask)
        if diag is None or diag.is_zero():
            return False
        for jmask in expansion:
            if col_pos[jmask] > row_pos:
                return False
    return True
