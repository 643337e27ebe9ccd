"""The characteristic isomorphism between graded superclass functions and QSym.

ScfElem is the symbolic side: rational combinations of kappa / normalized-chi
labels graded by degree.  It lowers to dense ClassFunctions only inside the
diagram verifier, keeping the Hopf arithmetic independent of group bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import groupscf, qsym
from .compositions import SubsetLabel, comp_of_set
from .groupscf import CheckReport, ClassFunction, GroupSpec
from .qsym import QSymElem, QSymTensor
from .scalars import rational

KAPPA = "kappa"
CHI_DOT = "chi_dot"

Key = tuple[int, str, SubsetLabel]


@dataclass
class ScfElem:
    """Element of the direct sum over n of the supercharacter function spaces."""

    nu: int
    terms: dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[Key, Fraction] = {}
        for (degree, tag, label), coeff in self.terms.items():
            if tag not in (KAPPA, CHI_DOT):
                raise ValueError(f"unknown basis tag {tag!r}")
            if label.ambient != degree:
                raise ValueError(
                    f"label {label} does not match degree {degree}"
                )
            coeff = Fraction(coeff)
            if coeff:
                clean[(degree, tag, label)] = coeff
        self.terms = clean

    @classmethod
    def kappa(cls, nu: int, degree: int, members=()) -> "ScfElem":
        label = SubsetLabel.of(degree, members)
        return cls(nu, {(degree, KAPPA, label): Fraction(1)})

    @classmethod
    def chi_dot(cls, nu: int, degree: int, members=()) -> "ScfElem":
        label = SubsetLabel.of(degree, members)
        return cls(nu, {(degree, CHI_DOT, label): Fraction(1)})

    @classmethod
    def from_dense(cls, phi: ClassFunction, degree: int) -> "ScfElem":
        """Expand a dense superclass function in the kappa basis."""
        spec = phi.spec
        if spec != GroupSpec.standard(spec.nu, degree):
            raise ValueError("dense lift expects a standard group")
        terms = {}
        for supp, coeff in groupscf.expand_kappa(phi).items():
            if coeff:
                terms[(degree, KAPPA, SubsetLabel.of(degree, supp))] = coeff
        return cls(spec.nu, terms)

    def to_dense(self, degree: int) -> ClassFunction:
        """Lower the degree-n component to a dense function on Q_n(nu)."""
        spec = GroupSpec.standard(self.nu, degree)
        total = groupscf.one(spec).scale(0)
        for (d, tag, label), coeff in self.terms.items():
            if d != degree:
                continue
            if tag == KAPPA:
                part = groupscf.kappa(spec, label.members)
            else:
                part = groupscf.dot_chi(spec, label.members)
            total = total + part.scale(coeff)
        return total

    def scale(self, c) -> "ScfElem":
        c = Fraction(c)
        return ScfElem(self.nu, {k: c * v for k, v in self.terms.items()})

    def __add__(self, other: "ScfElem") -> "ScfElem":
        if self.nu != other.nu:
            raise ValueError("cannot mix different nu")
        out = dict(self.terms)
        for k, v in other.terms.items():
            new = out.get(k, Fraction(0)) + v
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return ScfElem(self.nu, out)


def ch(x: ScfElem) -> QSymElem:
    """chi_dot^I goes to L_{comp(I)}; kappa_I to (nu-1)^{|I|} Pi(nu)_{comp(I)}."""
    total = QSymElem.zero("M")
    for (degree, tag, label), coeff in sorted(
        x.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].members)
    ):
        comp = comp_of_set(label)
        if tag == CHI_DOT:
            elem = QSymElem("L", {comp: rational(coeff)})
        else:
            scale = Fraction((x.nu - 1) ** label.size) * coeff
            elem = QSymElem("Pi", {comp: rational(scale)}, nu=x.nu)
        total = total + qsym.convert(elem, "M")
    return total


def _basis_elements(nu: int, degree: int):
    for tag in (KAPPA, CHI_DOT):
        for r in range(max(degree, 1)):
            for members in itertools.combinations(range(1, degree), r):
                yield tag, members


def _dense_basis(nu: int, degree: int, tag: str, members) -> ClassFunction:
    spec = GroupSpec.standard(nu, degree)
    if tag == KAPPA:
        return groupscf.kappa(spec, members)
    return groupscf.dot_chi(spec, members)


def _ch_of_dense(nu: int, phi: ClassFunction, degree: int) -> QSymElem:
    return ch(ScfElem.from_dense(phi, degree))


def verify_diagrams(nu: int, degree_bound: int) -> CheckReport:
    """Check that ch intertwines the group-side (m, delta) with QSym's product
    and coproduct on every kappa/chi_dot basis tuple up to the degree bound."""
    checks: list[tuple[str, bool, str]] = []

    # products: ch(m(phi, psi)) == ch(phi) * ch(psi)
    ok, witness = True, ""
    for m in range(0, degree_bound + 1):
        for n in range(0, degree_bound + 1 - m):
            for tag_a, mem_a in _basis_elements(nu, m):
                for tag_b, mem_b in _basis_elements(nu, n):
                    phi = _dense_basis(nu, m, tag_a, mem_a)
                    psi = _dense_basis(nu, n, tag_b, mem_b)
                    group_side = groupscf.product_m(phi, psi, m, n)
                    lhs = _ch_of_dense(nu, group_side, m + n)
                    rhs = qsym.product(
                        _ch_of_dense(nu, phi, m), _ch_of_dense(nu, psi, n)
                    )
                    if lhs != rhs:
                        ok = False
                        witness = f"product {tag_a}{sorted(mem_a)} (deg {m}) * {tag_b}{sorted(mem_b)} (deg {n})"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    checks.append(("ch intertwines products", ok, witness))

    # coproducts: (ch x ch)(delta phi) == Delta(ch phi)
    ok, witness = True, ""
    for n in range(0, degree_bound + 1):
        for tag, members in _basis_elements(nu, n):
            phi = _dense_basis(nu, n, tag, members)
            acc: dict = {}
            for k, pairs in groupscf.coproduct(phi, n).items():
                for left, right in pairs:
                    ch_l = _ch_of_dense(nu, left, k)
                    ch_r = _ch_of_dense(nu, right, n - k)
                    for ca, va in ch_l.terms.items():
                        for cb, vb in ch_r.terms.items():
                            qsym._add_term(acc, (ca, cb), va * vb)
            group_side = QSymTensor(("M", "M"), acc)
            qsym_side = qsym.coproduct(_ch_of_dense(nu, phi, n))
            if group_side != qsym_side:
                ok = False
                witness = f"coproduct {tag}{sorted(members)} (deg {n})"
                break
        if not ok:
            break
    checks.append(("ch intertwines coproducts", ok, witness))

    # graded dimensions agree on both sides
    ok = all(
        len(list(_basis_elements(nu, n))) == 2 * (1 << max(n - 1, 0))
        for n in range(0, degree_bound + 1)
    )
    checks.append(("graded dimension 2^(n-1)", ok, ""))

    return CheckReport(checks)
