"""Dense exact computation on Q_S(nu), the direct sum of copies of C_nu.

Superclasses, supercharacters, the graded product m_A / m and coproduct
delta_k / delta on superclass functions, and the Hall inner product, all
evaluated on actual group elements with Fraction arithmetic.  Functions are
stored densely over a mixed-radix enumeration of (g_s)_{s in S}.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .compositions import run_markers

DEFAULT_MAX_GROUP_ORDER = 1 << 20
MAX_GROUP_ENV = "HOPF_SCF_MAX_GROUP"


class GroupBoundError(ValueError):
    """Requested group exceeds the enumeration bound."""


def max_group_order() -> int:
    raw = os.environ.get(MAX_GROUP_ENV)
    if raw is None:
        return DEFAULT_MAX_GROUP_ORDER
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{MAX_GROUP_ENV} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class GroupSpec:
    """Q_S(nu): one copy of the cyclic group C_nu for each index in S."""

    nu: int
    index_set: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nu < 2:
            raise ValueError(f"nu must be at least 2, got {self.nu}")
        if tuple(sorted(set(self.index_set))) != self.index_set or any(
            i < 1 for i in self.index_set
        ):
            raise ValueError(f"index set must be sorted positive integers, got {self.index_set}")
        if self.order > max_group_order():
            raise GroupBoundError(
                f"group order {self.nu}^{len(self.index_set)} exceeds bound "
                f"{max_group_order()}; raise {MAX_GROUP_ENV} to override"
            )

    @classmethod
    def standard(cls, nu: int, degree: int) -> "GroupSpec":
        """Q_degree(nu) = Q_[degree-1](nu); degrees 0 and 1 are both trivial."""
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        return cls(nu, tuple(range(1, degree)))

    @property
    def rank(self) -> int:
        return len(self.index_set)

    @property
    def order(self) -> int:
        return self.nu ** len(self.index_set)

    def elements(self):
        """All (g_s) tuples aligned with the sorted index set."""
        return itertools.product(range(self.nu), repeat=self.rank)

    def index_of(self, element: tuple[int, ...]) -> int:
        # mixed radix matching the elements() enumeration (last index fastest)
        idx = 0
        for g in element:
            idx = idx * self.nu + g
        return idx

    def element_at(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.rank):
            idx, g = divmod(idx, self.nu)
            out.append(g)
        return tuple(reversed(out))

    def support_of(self, element: tuple[int, ...]) -> frozenset[int]:
        return frozenset(
            label for label, g in zip(self.index_set, element) if g != 0
        )


class ClassFunction:
    """Exact rational-valued function on Q_S(nu), stored densely."""

    __slots__ = ("spec", "values")

    def __init__(self, spec: GroupSpec, values):
        values = tuple(Fraction(v) for v in values)
        if len(values) != spec.order:
            raise ValueError(
                f"expected {spec.order} values for {spec}, got {len(values)}"
            )
        self.spec = spec
        self.values = values

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassFunction)
            and self.spec == other.spec
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.spec, self.values))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _require_same_spec(self, other)
        return ClassFunction(self.spec, (a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _require_same_spec(self, other)
        return ClassFunction(self.spec, (a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "ClassFunction":
        c = Fraction(c)
        return ClassFunction(self.spec, (c * v for v in self.values))

    def pointwise_mul(self, other: "ClassFunction") -> "ClassFunction":
        _require_same_spec(self, other)
        return ClassFunction(self.spec, (a * b for a, b in zip(self.values, other.values)))

    def value_at(self, element: tuple[int, ...]) -> Fraction:
        return self.values[self.spec.index_of(element)]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __repr__(self) -> str:
        return f"ClassFunction({self.spec}, {self.values})"


def _require_same_spec(a: ClassFunction, b: ClassFunction) -> None:
    if a.spec != b.spec:
        raise ValueError(f"class functions live on different groups: {a.spec} vs {b.spec}")


def _require_subset(I, S, what: str):
    I = frozenset(I)
    if not I <= set(S):
        raise ValueError(f"{what} {sorted(I)} is not a subset of the index set {S}")
    return I


# ---------------------------------------------------------------------------
# Single-index factors (functions on C_nu) and the coordinate notation


def f_one(nu: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in range(nu))


def f_reg(nu: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(nu if g == 0 else 0) for g in range(nu))


def f_reg_minus_one(nu: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(nu - 1 if g == 0 else -1) for g in range(nu))


def f_dot_off(nu: int) -> tuple[Fraction, ...]:
    """(reg - 1)/(nu - 1): value 1 at 0 and -1/(nu-1) elsewhere."""
    return tuple(v / (nu - 1) for v in f_reg_minus_one(nu))


def f_nonzero_indicator(nu: int) -> tuple[Fraction, ...]:
    """1 - reg/nu: the indicator of the nonidentity elements."""
    return tuple(Fraction(0 if g == 0 else 1) for g in range(nu))


def f_zero_indicator(nu: int) -> tuple[Fraction, ...]:
    """reg/nu: the indicator of the identity."""
    return tuple(Fraction(1 if g == 0 else 0) for g in range(nu))


def f_scaled(factor: tuple[Fraction, ...], c) -> tuple[Fraction, ...]:
    c = Fraction(c)
    return tuple(c * v for v in factor)


@dataclass(frozen=True)
class FactorVector:
    """A pure tensor of per-index factors with a global rational prefactor."""

    spec: GroupSpec
    factors: tuple[tuple[Fraction, ...], ...]
    prefactor: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if len(self.factors) != self.spec.rank:
            raise ValueError("one factor per index is required")
        if any(len(f) != self.spec.nu for f in self.factors):
            raise ValueError("each factor must list nu values")

    def expand(self) -> ClassFunction:
        values = []
        for g in self.spec.elements():
            v = self.prefactor
            for factor, gi in zip(self.factors, g):
                v *= factor[gi]
            values.append(v)
        return ClassFunction(self.spec, values)


def factor_vector(spec: GroupSpec, on_set, on_factor, off_factor, prefactor=1) -> FactorVector:
    on = _require_subset(on_set, spec.index_set, "index subset")
    factors = tuple(
        on_factor if label in on else off_factor for label in spec.index_set
    )
    return FactorVector(spec, factors, Fraction(prefactor))


# ---------------------------------------------------------------------------
# Superclass identifiers and supercharacters


def one(spec: GroupSpec) -> ClassFunction:
    return ClassFunction(spec, [Fraction(1)] * spec.order)


def unit(nu: int) -> ClassFunction:
    """The function 1 on the trivial group (degrees 0 and 1)."""
    return one(GroupSpec(nu, ()))


def kappa(spec: GroupSpec, I) -> ClassFunction:
    """Indicator of the superclass cl_I: elements with support exactly I."""
    I = _require_subset(I, spec.index_set, "superclass label")
    values = [
        Fraction(1 if spec.support_of(g) == I else 0) for g in spec.elements()
    ]
    return ClassFunction(spec, values)


def kappa_factor_vector(spec: GroupSpec, I) -> FactorVector:
    """kappa_I as a factor vector: nonzero-indicators on I, zero-indicators off I."""
    return factor_vector(
        spec, I, f_nonzero_indicator(spec.nu), f_zero_indicator(spec.nu)
    )


def chi(spec: GroupSpec, I) -> ClassFunction:
    """Supercharacter: trivial factors on I, reg - 1 off I."""
    fv = factor_vector(spec, I, f_one(spec.nu), f_reg_minus_one(spec.nu))
    return fv.expand()


def dot_chi(spec: GroupSpec, I) -> ClassFunction:
    """chi normalized by its value at the identity, (nu-1)^{|S \\ I|}."""
    I = _require_subset(I, spec.index_set, "supercharacter label")
    off = spec.rank - len(I)
    return chi(spec, I).scale(Fraction(1, (spec.nu - 1) ** off))


def lattice_superclass_oracle(spec: GroupSpec, I) -> ClassFunction:
    """Superclass of Q_I computed straight from the normal-subgroup lattice.

    Walks the sublattice {Q_J : J subset of S}, finds the members covered by
    Q_I, and keeps the elements of Q_I lying in none of them.
    """
    I = _require_subset(I, spec.index_set, "lattice member")
    members = [frozenset(c) for r in range(spec.rank + 1)
               for c in itertools.combinations(spec.index_set, r)]
    below = [M for M in members if M < I]
    covered = [M for M in below if not any(M < P < I for P in below)]
    values = []
    for g in spec.elements():
        supp = spec.support_of(g)
        in_I = supp <= I
        in_covered = any(supp <= M for M in covered)
        values.append(Fraction(1 if in_I and not in_covered else 0))
    return ClassFunction(spec, values)


# ---------------------------------------------------------------------------
# Restriction, tensor embedding, relabelling


def restrict(phi: ClassFunction, T) -> ClassFunction:
    """phi pulled back to the subgroup Q_T supported inside T."""
    spec = phi.spec
    T = _require_subset(T, spec.index_set, "restriction target")
    target = GroupSpec(spec.nu, tuple(sorted(T)))
    positions = [spec.index_set.index(label) for label in target.index_set]
    values = []
    for h in target.elements():
        g = [0] * spec.rank
        for pos, value in zip(positions, h):
            g[pos] = value
        values.append(phi.values[spec.index_of(tuple(g))])
    return ClassFunction(target, values)


def tensor_embed(phi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    """(phi tensor_S psi)(a, b) = phi(a) psi(b) on the disjoint union of indices."""
    sa, sb = phi.spec, psi.spec
    if sa.nu != sb.nu:
        raise ValueError("tensor factors must share nu")
    if set(sa.index_set) & set(sb.index_set):
        raise ValueError(
            f"index sets {sa.index_set} and {sb.index_set} do not partition the target"
        )
    target = GroupSpec(sa.nu, tuple(sorted(sa.index_set + sb.index_set)))
    pos_a = [target.index_set.index(label) for label in sa.index_set]
    pos_b = [target.index_set.index(label) for label in sb.index_set]
    values = []
    for g in target.elements():
        a = tuple(g[p] for p in pos_a)
        b = tuple(g[p] for p in pos_b)
        values.append(phi.values[sa.index_of(a)] * psi.values[sb.index_of(b)])
    return ClassFunction(target, values)


def relabel(phi: ClassFunction, index_set) -> ClassFunction:
    """Pull back along the index standardization Q_S -> Q_{t+1}.

    Both enumerations are mixed-radix over the sorted index set, so only the
    labels change.
    """
    index_set = tuple(sorted(index_set))
    if len(index_set) != phi.spec.rank:
        raise ValueError(
            f"cannot relabel {phi.spec.rank} indices onto {index_set}"
        )
    return ClassFunction(GroupSpec(phi.spec.nu, index_set), phi.values)


def standardize_labels(phi: ClassFunction) -> ClassFunction:
    """Inverse of relabel: move phi onto the standard indices 1..t."""
    return relabel(phi, range(1, phi.spec.rank + 1))


# ---------------------------------------------------------------------------
# The product


def product_mA(phi: ClassFunction, psi: ClassFunction, A, m: int, n: int) -> ClassFunction:
    """The A-indexed summand m_A of the graded product.

    phi must live on Q_m(nu) and psi on Q_n(nu) (standard index sets); A is a
    size-n subset of [m+n] saying which slots the psi side occupies.
    """
    nu = phi.spec.nu
    if psi.spec.nu != nu:
        raise ValueError("operands must share nu")
    if phi.spec != GroupSpec.standard(nu, m) or psi.spec != GroupSpec.standard(nu, n):
        raise ValueError("operands must live on standard groups Q_m, Q_n")
    if m == 0 or n == 0:
        scalar = phi.values[0] if m == 0 else psi.values[0]
        other = psi if m == 0 else phi
        return other.scale(scalar)
    A = frozenset(A)
    if len(A) != n or not A <= set(range(1, m + n + 1)):
        raise ValueError(f"A must be a size-{n} subset of [{m + n}], got {sorted(A)}")

    def padded(f: ClassFunction, deg: int) -> ClassFunction:
        # f tensor_1 (reg-1)/(nu-1) on Q_[deg]
        pad = ClassFunction(GroupSpec(nu, (deg,)), f_dot_off(nu))
        return tensor_embed(f, pad)

    a_sorted = tuple(sorted(A))
    ac_sorted = tuple(sorted(set(range(1, m + n + 1)) - A))
    left = relabel(padded(phi, m), ac_sorted)
    right = relabel(padded(psi, n), a_sorted)
    s_a = tensor_embed(left, right)

    c1, _, c = run_markers(A, m + n)
    keep = tuple(i for i in range(1, m + n) if not c.contains(i))
    restricted = restrict(s_a, keep)

    marker_spec = GroupSpec(nu, c.members)
    marker = factor_vector(
        marker_spec, c1.members, f_one(nu), f_dot_off(nu)
    ).expand()
    return tensor_embed(marker, restricted)


def product_m(phi: ClassFunction, psi: ClassFunction, m: int, n: int) -> ClassFunction:
    """Sum of m_A over all size-n subsets A of [m+n]."""
    if m == 0 or n == 0:
        return product_mA(phi, psi, frozenset(), m, n)
    total = None
    for A in itertools.combinations(range(1, m + n + 1), n):
        term = product_mA(phi, psi, frozenset(A), m, n)
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# The coproduct


def expand_kappa(phi: ClassFunction) -> dict[frozenset, Fraction]:
    """Coefficients of phi in the superclass-identifier basis.

    Raises if phi is not constant on superclasses, i.e. lies outside the
    supercharacter function space.
    """
    spec = phi.spec
    coeffs: dict[frozenset, Fraction] = {}
    for g, v in zip(spec.elements(), phi.values):
        supp = spec.support_of(g)
        if supp in coeffs:
            if coeffs[supp] != v:
                raise ValueError(
                    f"not a superclass function: differs on cl_{sorted(supp)}"
                )
        else:
            coeffs[supp] = v
    return {supp: v for supp, v in coeffs.items()}


def coproduct_k(phi: ClassFunction, k: int, n: int) -> list[tuple[ClassFunction, ClassFunction]]:
    """delta_k as a list of pure tensor summands (left on Q_k, right on Q_{n-k}).

    Computed by expanding phi in the kappa basis; the factor pair of the
    defining restriction identity is not unique, but the value is.
    """
    nu = phi.spec.nu
    if phi.spec != GroupSpec.standard(nu, n):
        raise ValueError("coproduct operands must live on a standard group")
    if not 0 <= k <= n:
        raise ValueError(f"slice position k={k} out of range 0..{n}")
    if k == 0:
        return [(unit(nu), phi)]
    if k == n:
        return [(phi, unit(nu))]
    left_spec = GroupSpec.standard(nu, k)
    right_spec = GroupSpec.standard(nu, n - k)
    out = []
    for I, coeff in sorted(expand_kappa(phi).items(), key=lambda kv: sorted(kv[0])):
        if coeff == 0 or k in I:
            continue
        left_label = {i for i in I if i < k}
        right_label = {i - k for i in I if i > k}
        out.append(
            (
                kappa(left_spec, left_label).scale(coeff),
                kappa(right_spec, right_label),
            )
        )
    return out


def coproduct(phi: ClassFunction, n: int) -> dict[int, list[tuple[ClassFunction, ClassFunction]]]:
    """All slices delta_k for k = 0..n."""
    return {k: coproduct_k(phi, k, n) for k in range(n + 1)}


# ---------------------------------------------------------------------------
# Hall inner product and the axiom checker


def hall_inner(phi: ClassFunction, psi: ClassFunction) -> Fraction:
    """(1/|G|) sum_g phi(g) psi(g^{-1}); inverses negate componentwise."""
    _require_same_spec(phi, psi)
    spec = phi.spec
    total = Fraction(0)
    for g, v in zip(spec.elements(), phi.values):
        inv = tuple((-x) % spec.nu for x in g)
        total += v * psi.values[spec.index_of(inv)]
    return total / spec.order


@dataclass
class CheckReport:
    """Outcome of a verification sweep: named checks with optional witnesses."""

    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, ok, detail in self.checks if not ok]


def _all_subsets(index_set):
    for r in range(len(index_set) + 1):
        yield from (frozenset(c) for c in itertools.combinations(index_set, r))


def verify_axioms(spec: GroupSpec) -> CheckReport:
    """Supercharacter-theory axioms C1-C3 plus orthogonality, checked densely."""
    checks: list[tuple[str, bool, str]] = []
    subsets = list(_all_subsets(spec.index_set))
    kappas = {I: kappa(spec, I) for I in subsets}
    chis = {I: chi(spec, I) for I in subsets}

    # C1: the identity is its own superclass
    identity_only = [Fraction(1 if i == 0 else 0) for i in range(spec.order)]
    ok = kappas[frozenset()].values == tuple(identity_only)
    checks.append(("C1 identity superclass", ok, "" if ok else "cl_emptyset != {0}"))

    # C2: equally many superclasses and supercharacter blocks, all nonempty/distinct
    ok = all(not f.is_zero() for f in kappas.values()) and len(
        set(kappas.values())
    ) == len(subsets)
    checks.append(("C2 superclass count", ok, "" if ok else "superclasses collide"))
    ok = len(set(chis.values())) == len(subsets)
    checks.append(("C2 supercharacter count", ok, "" if ok else "supercharacters collide"))

    # C3: each supercharacter is constant on each superclass
    witness = ""
    ok = True
    for I, f in chis.items():
        try:
            expand_kappa(f)
        except ValueError as exc:
            ok = False
            witness = f"chi^{sorted(I)}: {exc}"
            break
    checks.append(("C3 superclass constancy", ok, witness))

    # partition of the group by superclasses
    total = kappas[frozenset()]
    for I in subsets:
        if I:
            total = total + kappas[I]
    ok = total == one(spec)
    checks.append(("superclass partition", ok, "" if ok else "sum of kappas != 1"))

    # Hall orthogonality within each family
    witness = ""
    ok = True
    for I, J in itertools.combinations(subsets, 2):
        if hall_inner(chis[I], chis[J]) != 0:
            ok, witness = False, f"<chi^{sorted(I)}, chi^{sorted(J)}> != 0"
            break
        if hall_inner(kappas[I], kappas[J]) != 0:
            ok, witness = False, f"<kappa_{sorted(I)}, kappa_{sorted(J)}> != 0"
            break
    checks.append(("Hall orthogonality", ok, witness))

    # Hall norms; the dense value for kappa is (nu-1)^{|I|} / nu^{|S|},
    # the reciprocal of the display it is usually quoted as.
    witness = ""
    ok = True
    for I in subsets:
        off = spec.rank - len(I)
        if hall_inner(chis[I], chis[I]) != Fraction((spec.nu - 1) ** off):
            ok, witness = False, f"chi norm at I={sorted(I)}"
            break
        expected = Fraction((spec.nu - 1) ** len(I), spec.nu**spec.rank)
        if hall_inner(kappas[I], kappas[I]) != expected:
            ok, witness = False, f"kappa norm at I={sorted(I)}"
            break
    checks.append(("Hall norms", ok, witness))

    # lattice oracle agrees with the support description of superclasses
    witness = ""
    ok = True
    for I in subsets:
        if lattice_superclass_oracle(spec, I) != kappas[I]:
            ok, witness = False, f"lattice superclass at I={sorted(I)}"
            break
    checks.append(("lattice superclasses", ok, witness))

    return CheckReport(checks)
