"""Permutations of {1..n}, inversion counts, the cycles T_{1k}, and ordered-set
helpers.

Conventions used everywhere in the package:

* a permutation is stored in one-line notation, ``images[i-1] == p(i)``;
* composition is ``(a * b)(i) == a(b(i))``;
* a permutation acts on a tuple of modes by ``(p . K)[i] == K[p(i)]``, so
  ``T_{1k} . K`` moves the k-th entry of K to the front.  With this action
  ``p . (s . K) == (s * p) . K``.
* S_n is enumerated lexicographically in one-line notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Sequence

OrderedTuple = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{len(images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @cached_property
    def inversions(self) -> int:
        return inversions(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def act(self, entries: Sequence[int]) -> OrderedTuple:
        """The rearranged tuple ``(entries[p(1)], ..., entries[p(n)])``."""
        if len(entries) != self.n:
            raise ValueError("tuple length differs from permutation degree")
        return tuple(entries[i - 1] for i in self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def inversions(p: Permutation | Sequence[int]) -> int:
    """Number of pairs i < j with p(i) > p(j)."""
    img = p.images if isinstance(p, Permutation) else tuple(p)
    n = len(img)
    return sum(1 for i in range(n) for j in range(i + 1, n) if img[i] > img[j])


def compose(a: Permutation, b: Permutation) -> Permutation:
    if a.n != b.n:
        raise ValueError(f"cannot compose permutations of degree {a.n} and {b.n}")
    ai = a.images
    return Permutation(tuple(ai[j - 1] for j in b.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.n
    for i, v in enumerate(p.images, 1):
        out[v - 1] = i
    return Permutation(tuple(out))


def t1k(n: int, k: int) -> Permutation:
    """The cycle sending [1..n] to [k, 1, .., k-1, k+1, .., n]."""
    if not 2 <= k <= n:
        raise ValueError(f"t1k needs 2 <= k <= n, got n={n}, k={k}")
    return Permutation((k,) + tuple(range(1, k)) + tuple(range(k + 1, n + 1)))


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """S_n in lexicographic one-line order."""
    if n < 0:
        raise ValueError("negative degree")
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def perm_index(n: int) -> dict[Permutation, int]:
    return {p: i for i, p in enumerate(all_permutations(n))}


@lru_cache(maxsize=None)
def _snp(n: int, p: int) -> tuple[Permutation, ...]:
    out = []
    for ks in itertools.combinations(range(2, n + 1), p):
        prod = Permutation.identity(n)
        for k in ks:
            prod = prod * t1k(n, k)
        out.append(prod)
    # the products are distinct; a collision would mean a broken convention
    assert len(set(out)) == len(out) == comb(n - 1, p)
    return tuple(out)


def enumerate_snp(n: int, p: int) -> list[Permutation]:
    """All products T_{1k_1} * ... * T_{1k_p} with 1 < k_1 < ... < k_p <= n."""
    if n < 1 or not 0 <= p <= n - 1:
        raise ValueError(f"enumerate_snp needs 0 <= p <= n-1, got n={n}, p={p}")
    return list(_snp(n, p))


# --------------------------------------------------------------------------
# ordered sets (tuples of distinct mode labels)
# --------------------------------------------------------------------------

def _check_distinct(t: Sequence[int]) -> None:
    if len(set(t)) != len(t):
        raise ValueError(f"ordered tuple {tuple(t)} has repeated entries")


def rearrangement(reference: Sequence[int], rearranged: Sequence[int]) -> Permutation:
    """The unique s with ``s.act(reference) == rearranged``."""
    _check_distinct(reference)
    pos = {x: i for i, x in enumerate(reference, 1)}
    if len(rearranged) != len(reference) or set(rearranged) != set(reference):
        raise ValueError(f"{tuple(rearranged)} is not a rearrangement of {tuple(reference)}")
    return Permutation(tuple(pos[x] for x in rearranged))


def relative_inversions(reference: Sequence[int], rearranged: Sequence[int]) -> int:
    """I_A(sA) = I(s): inversions of ``rearranged`` measured against ``reference``'s order."""
    return inversions(rearrangement(reference, rearranged))


def is_subsequence(sub: Sequence[int], seq: Sequence[int]) -> bool:
    it = iter(seq)
    return all(x in it for x in sub)


def difference(K: Sequence[int], J: Sequence[int]) -> OrderedTuple:
    """K - J, keeping K's order."""
    js = set(J)
    return tuple(x for x in K if x not in js)


def reverse(A: Sequence[int]) -> OrderedTuple:
    return tuple(reversed(A))


def split_concat(K: Sequence[int], J: Sequence[int]) -> tuple[OrderedTuple, int]:
    """Return ((K - J) followed by J, I_K of that arrangement)."""
    _check_distinct(K)
    if not is_subsequence(J, K):
        raise ValueError(f"{tuple(J)} is not an order-preserving subset of {tuple(K)}")
    arranged = difference(K, J) + tuple(J)
    return arranged, relative_inversions(K, arranged)
