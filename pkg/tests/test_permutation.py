from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from quon_energy.permutation import (
    Permutation,
    all_permutations,
    compose,
    difference,
    enumerate_snp,
    inverse,
    inversions,
    is_subsequence,
    rearrangement,
    relative_inversions,
    reverse,
    split_concat,
    t1k,
)

P = lambda *xs: Permutation(xs)


def test_inversion_examples():
    for n in range(1, 6):
        assert inversions(Permutation.identity(n)) == 0
    assert inversions(P(3, 1, 2)) == 2
    for n in range(2, 7):
        for k in range(2, n + 1):
            assert inversions(t1k(n, k)) == k - 1


def test_compose_examples():
    p = P(2, 3, 1)
    assert compose(p, Permutation.identity(3)) == p
    assert compose(p, inverse(p)).is_identity()
    assert compose(P(2, 1), P(2, 1)) == P(1, 2)
    # (a * b)(i) = a(b(i))
    a, b = P(2, 3, 1), P(1, 3, 2)
    assert all((a * b)(i) == a(b(i)) for i in range(1, 4))


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(P(1, 2), P(1, 2, 3))


def test_inverse_examples():
    assert inverse(Permutation.identity(4)).is_identity()
    assert inverse(P(2, 3, 1)) == P(3, 1, 2)
    assert inversions(inverse(P(3, 1, 2))) == 2


def test_t1k_examples():
    assert t1k(3, 2) == P(2, 1, 3)
    assert t1k(4, 4) == P(4, 1, 2, 3)
    with pytest.raises(ValueError):
        t1k(3, 1)
    with pytest.raises(ValueError):
        t1k(3, 4)


def test_t1k_moves_entry_to_front():
    assert t1k(4, 3).act((10, 20, 30, 40)) == (30, 10, 20, 40)


def test_invalid_permutation():
    with pytest.raises(ValueError):
        P(1, 1, 2)
    with pytest.raises(ValueError):
        P(0, 1)


def test_snp_examples():
    assert enumerate_snp(4, 0) == [Permutation.identity(4)]
    assert enumerate_snp(2, 1) == [P(2, 1)]
    assert len(enumerate_snp(5, 2)) == 6
    with pytest.raises(ValueError):
        enumerate_snp(3, 3)


@pytest.mark.parametrize("n", range(1, 8))
def test_snp_sizes_and_distinct(n):
    seen = set()
    for p in range(n):
        group = enumerate_snp(n, p)
        assert len(group) == len(set(group)) == comb(n - 1, p)
        seen.update(group)
    assert len(seen) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_inversions_of_inverse(n):
    for p in all_permutations(n):
        assert inversions(p) == inversions(inverse(p))
        assert 0 <= inversions(p) <= n * (n - 1) // 2


def test_lex_order():
    perms = all_permutations(4)
    assert list(perms) == sorted(perms)
    assert perms[0].is_identity()


def test_relative_inversion_examples():
    A = (4, 8, 1)
    assert relative_inversions(A, A) == 0
    assert relative_inversions((5, 9), (9, 5)) == 1
    assert relative_inversions(A, reverse(A)) == 3
    with pytest.raises(ValueError):
        relative_inversions((1, 2), (1, 3))


@pytest.mark.parametrize("n", range(1, 6))
def test_relative_inversions_roundtrip(n):
    A = tuple(range(10, 10 + 3 * n, 3))
    for s in all_permutations(n):
        assert rearrangement(A, s.act(A)) == s
        assert relative_inversions(A, s.act(A)) == inversions(s)


def test_action_is_right_action():
    K = (7, 3, 9, 1)
    for s in all_permutations(4):
        for p in all_permutations(4)[::5]:
            assert p.act(s.act(K)) == (s * p).act(K)


def test_split_concat_examples():
    K = (1, 2, 3)
    assert split_concat(K, K) == (K, 0)
    assert split_concat((1, 2), (1,)) == ((2, 1), 1)
    assert split_concat(K, (2,)) == ((1, 3, 2), 1)
    with pytest.raises(ValueError):
        split_concat(K, (3, 1))
    with pytest.raises(ValueError):
        split_concat(K, (4,))


def _subsets(seq):
    for r in range(len(seq) + 1):
        yield from combinations(seq, r)


@pytest.mark.parametrize("size", range(1, 6))
def test_inversion_additivity(size):
    """I_K((K-J)+J) + I_J(rev(L)+(J-L)) = I_K((K-J)+rev(L)+(J-L))."""
    K = tuple(range(20, 20 - 3 * size, -3))
    for J in _subsets(K):
        if not J:
            continue
        arranged, first = split_concat(K, J)
        for L in _subsets(J):
            inner = reverse(L) + difference(J, L)
            lhs = first + relative_inversions(J, inner)
            rhs = relative_inversions(K, difference(K, J) + inner)
            assert lhs == rhs


@given(st.permutations(list(range(1, 7))), st.permutations(list(range(1, 7))))
def test_group_laws(a, b):
    a, b = Permutation(a), Permutation(b)
    assert inverse(a * b) == inverse(b) * inverse(a)
    assert (a * inverse(a)).is_identity()


@given(st.lists(st.integers(0, 40), unique=True, max_size=7), st.data())
def test_subsequence_difference(K, data):
    K = tuple(K)
    J = tuple(x for x in K if data.draw(st.booleans()))
    assert is_subsequence(J, K)
    arranged, _ = split_concat(K, J)
    assert sorted(arranged) == sorted(K)
    assert arranged[len(K) - len(J):] == J
