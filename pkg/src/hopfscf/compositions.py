"""Compositions, subset labels, run decompositions, shuffles, and word tools.

Compositions of n are identified with subsets of [n-1] = {1, ..., n-1}
through partial sums; every basis of QSym/NSym used elsewhere is labelled by
one or the other.  Subsets are stored as bit sets over a bounded ambient.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

# Largest supported degree: subsets carry at most MAX_AMBIENT - 1 split points.
# Exceeding the bound raises AmbientBoundError; desk-scale checks sit far below it.
MAX_AMBIENT = 64


class AmbientBoundError(ValueError):
    """Ambient size exceeds the supported bit-set bound."""


class Composition(tuple):
    """A finite sequence of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Composition":
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def reverse(self) -> "Composition":
        return Composition(self[::-1])

    def concat(self, other: "Composition") -> "Composition":
        return Composition(tuple(self) + tuple(other))

    def partition(self) -> tuple[int, ...]:
        """Parts rearranged weakly decreasing."""
        return tuple(sorted(self, reverse=True))

    def __repr__(self) -> str:
        return f"({','.join(str(p) for p in self)})"


EMPTY_COMPOSITION = Composition()


def mask_of(members: Iterable[int]) -> int:
    """Bit mask for a set of positive integers (element i at bit i-1)."""
    mask = 0
    for i in members:
        if i < 1:
            raise ValueError(f"subset elements must be positive, got {i}")
        mask |= 1 << (i - 1)
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True, order=True)
class SubsetLabel:
    """A subset of [ambient - 1] carried with its ambient size.

    Two labels are equal only when both the ambient and the members agree;
    the same member set in different ambients labels different compositions.
    """

    ambient: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.ambient < 0:
            raise ValueError(f"ambient must be nonnegative, got {self.ambient}")
        if self.ambient > MAX_AMBIENT:
            raise AmbientBoundError(
                f"ambient {self.ambient} exceeds supported bound {MAX_AMBIENT}"
            )
        limit = 1 << max(self.ambient - 1, 0) if self.ambient >= 1 else 1
        if self.mask < 0 or self.mask >= limit:
            raise ValueError(
                f"members {members_of(self.mask)} not contained in [{self.ambient - 1}]"
            )

    @classmethod
    def of(cls, ambient: int, members: Iterable[int] = ()) -> "SubsetLabel":
        return cls(ambient, mask_of(members))

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def contains(self, i: int) -> bool:
        return i >= 1 and bool(self.mask >> (i - 1) & 1)

    def complement(self) -> "SubsetLabel":
        full = (1 << (self.ambient - 1)) - 1 if self.ambient >= 1 else 0
        return SubsetLabel(self.ambient, full ^ self.mask)

    def __repr__(self) -> str:
        return f"{{{','.join(str(i) for i in self.members)}}}<{self.ambient}>"


def comp_of_set(label: SubsetLabel) -> Composition:
    """The composition of n = ambient with partial sums at the members."""
    n = label.ambient
    if n == 0:
        return EMPTY_COMPOSITION
    points = label.members
    parts = []
    prev = 0
    for s in points:
        parts.append(s - prev)
        prev = s
    parts.append(n - prev)
    return Composition(parts)


def set_of_comp(alpha: Composition | Iterable[int]) -> SubsetLabel:
    """Inverse of comp_of_set: partial sums of alpha except the last."""
    alpha = Composition(alpha)
    total = 0
    points = []
    for p in alpha[:-1]:
        total += p
        points.append(total)
    return SubsetLabel.of(alpha.size, points)


def complement(alpha: Composition | Iterable[int]) -> Composition:
    """comp([n-1] minus set(alpha)); an involution on compositions of n."""
    return comp_of_set(set_of_comp(alpha).complement())


def near_concat(alpha: Composition | Iterable[int], beta: Composition | Iterable[int]) -> Composition:
    """Concatenation with the boundary parts fused."""
    alpha, beta = Composition(alpha), Composition(beta)
    if not alpha:
        return beta
    if not beta:
        return alpha
    return Composition(alpha[:-1] + (alpha[-1] + beta[0],) + beta[1:])


def iter_submasks(mask: int):
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def compositions_of(n: int):
    """All compositions of n, ordered by their subset mask."""
    if n == 0:
        yield EMPTY_COMPOSITION
        return
    full = (1 << (n - 1)) - 1
    for mask in range(full + 1):
        yield comp_of_set(SubsetLabel(n, mask))


def run_decomposition(members: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Maximally connected subsets (runs), ordered by their minimum."""
    elems = sorted(set(members))
    runs: list[list[int]] = []
    for x in elems:
        if runs and runs[-1][-1] == x - 1:
            runs[-1].append(x)
        else:
            runs.append([x])
    return tuple(tuple(r) for r in runs)


def runs_composition(members: Iterable[int]) -> Composition:
    """Run lengths as a composition, ordered by run minimum."""
    return Composition(len(r) for r in run_decomposition(members))


def run_markers(members: Iterable[int], k: int) -> tuple[SubsetLabel, SubsetLabel, SubsetLabel]:
    """(c1, c2, c) for a subset A of [k]: run maxima of A, of its complement
    in [k], both with k removed, and their disjoint union."""
    a = set(members)
    if any(x < 1 or x > k for x in a):
        raise ValueError(f"subset {sorted(a)} not contained in [{k}]")
    c1 = {r[-1] for r in run_decomposition(a)} - {k}
    c2 = {r[-1] for r in run_decomposition(set(range(1, k + 1)) - a)} - {k}
    return (
        SubsetLabel.of(k, c1),
        SubsetLabel.of(k, c2),
        SubsetLabel.of(k, c1 | c2),
    )


def _select(sorted_pool: Sequence[int], positions: Iterable[int]) -> set[int]:
    # positions are 1-based ranks into the ascending pool
    return {sorted_pool[i - 1] for i in positions}


def preshuffle(I: SubsetLabel, J: SubsetLabel, A: Iterable[int], m: int, n: int) -> SubsetLabel:
    """The A-preshuffle: ranks I read off the complement of A, ranks J read
    off A, both inside [m+n], reinterpreted as a subset of [m+n-1]."""
    if I.ambient != m or J.ambient != n:
        raise ValueError(f"expected I in ambient {m} and J in ambient {n}")
    a = sorted(set(A))
    if len(a) != n:
        raise ValueError(f"selector A must have size n={n}, got {a}")
    if a and (a[0] < 1 or a[-1] > m + n):
        raise ValueError(f"selector A={a} not contained in [{m + n}]")
    ac = sorted(set(range(1, m + n + 1)) - set(a))
    picked = _select(ac, I.members) | _select(a, J.members)
    return SubsetLabel.of(m + n, picked)


def a_shuffle(I: SubsetLabel, J: SubsetLabel, A: Iterable[int], m: int, n: int) -> SubsetLabel:
    """The A-shuffle c1(A) joined with the preshuffle stripped of c(A)."""
    pre = preshuffle(I, J, A, m, n)
    c1, _, c = run_markers(A, m + n)
    return SubsetLabel(m + n, c1.mask | (pre.mask & ~c.mask))


def overlapping_shuffles(alpha: Composition | Iterable[int], beta: Composition | Iterable[int]) -> Counter:
    """Multiset of weights of all overlapping shuffles of alpha and beta.

    At each step take the next part of alpha, the next part of beta, or fuse
    the two next parts into one.
    """
    alpha, beta = Composition(alpha), Composition(beta)
    out: Counter = Counter()

    def rec(i: int, j: int, prefix: tuple[int, ...]) -> None:
        if i == len(alpha) and j == len(beta):
            out[Composition(prefix)] += 1
            return
        if i < len(alpha):
            rec(i + 1, j, prefix + (alpha[i],))
        if j < len(beta):
            rec(i, j + 1, prefix + (beta[j],))
        if i < len(alpha) and j < len(beta):
            rec(i + 1, j + 1, prefix + (alpha[i] + beta[j],))

    rec(0, 0, ())
    return out


# ---------------------------------------------------------------------------
# Words over a totally ordered alphabet


def descent_set(word: Sequence[int]) -> SubsetLabel:
    """Positions i with word[i] > word[i+1] (1-based), in ambient len(word)."""
    return SubsetLabel.of(
        len(word), (i for i in range(1, len(word)) if word[i - 1] > word[i])
    )


def standardize(word: Sequence[int]) -> tuple[int, ...]:
    """The permutation with the same relative order; ties broken left to right."""
    order = sorted(range(len(word)), key=lambda i: (word[i], i))
    std = [0] * len(word)
    for rank, i in enumerate(order, start=1):
        std[i] = rank
    return tuple(std)


def shuffle_words(u: Sequence[int], v: Sequence[int]) -> Counter:
    """Multiset of all interleavings of u and v (binom(|u|+|v|, |v|) total)."""
    out: Counter = Counter()
    u, v = tuple(u), tuple(v)

    def rec(i: int, j: int, prefix: tuple[int, ...]) -> None:
        if i == len(u) and j == len(v):
            out[prefix] += 1
            return
        if i < len(u):
            rec(i + 1, j, prefix + (u[i],))
        if j < len(v):
            rec(i, j + 1, prefix + (v[j],))

    rec(0, 0, ())
    return out


def shifted_shuffle(u: Sequence[int], v: Sequence[int], m: int) -> Counter:
    """Shuffle of u with v shifted up by m."""
    return shuffle_words(u, tuple(x + m for x in v))


def shuffle_by_selector(u: Sequence[int], v: Sequence[int], A: Iterable[int]) -> tuple[int, ...]:
    """Single interleaving: letters of v go to the positions in A, letters of
    u to the rest, both in order."""
    m, n = len(u), len(v)
    a = sorted(set(A))
    if len(a) != n or (a and (a[0] < 1 or a[-1] > m + n)):
        raise ValueError(f"selector A={a} invalid for word lengths {m}, {n}")
    word = [0] * (m + n)
    it_v = iter(v)
    for pos in a:
        word[pos - 1] = next(it_v)
    it_u = iter(u)
    for pos in sorted(set(range(1, m + n + 1)) - set(a)):
        word[pos - 1] = next(it_u)
    return tuple(word)


def descent_rep(I: SubsetLabel) -> tuple[int, ...]:
    """Lexicographically smallest permutation of [ambient] with descent set I."""
    m = I.ambient
    target = set(I.members)

    def rec(prefix: list[int], used: set[int]):
        pos = len(prefix)
        if pos == m:
            return tuple(prefix)
        for val in range(1, m + 1):
            if val in used:
                continue
            if pos > 0:
                descends = prefix[-1] > val
                if descends != (pos in target):
                    continue
            found = rec(prefix + [val], used | {val})
            if found is not None:
                return found
        return None

    word = rec([], set())
    if word is None:
        raise ValueError(f"no permutation of [{m}] has descent set {I}")
    return word
