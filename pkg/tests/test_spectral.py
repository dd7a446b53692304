from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from crcodes.errors import NotAnEigenvalue, ParameterOutOfRange
from crcodes.spectral import (IntersectionArray, eigenvalues, hamming_array, is_qpoly_ordering, johnson_array,
                              krein_parameters, krein_residual, orthogonality_residual, qpoly_orderings,
                              spectrum, standard_eigenvector, tridiagonal_matrix, valencies_and_multiplicities)

C4 = IntersectionArray((2, 1), (1, 2))
T5 = IntersectionArray((6, 2), (1, 4))
DESARGUES = IntersectionArray.parse("{3,2,2,1,1;1,1,2,2,3}")

# (name, intersection array, brute-force adjacency builder)
FAMILIES = [
    ("H(3,2)", hamming_array(3, 2), lambda: oracles.hamming_adjacency(3, 2)),
    ("H(4,2)", hamming_array(4, 2), lambda: oracles.hamming_adjacency(4, 2)),
    ("H(3,3)", hamming_array(3, 3), lambda: oracles.hamming_adjacency(3, 3)),
    ("H(2,4)", hamming_array(2, 4), lambda: oracles.hamming_adjacency(2, 4)),
    ("J(5,2)", johnson_array(5, 2), lambda: oracles.johnson_adjacency(5, 2)),
    ("J(6,3)", johnson_array(6, 3), lambda: oracles.johnson_adjacency(6, 3)),
    ("J(7,3)", johnson_array(7, 3), lambda: oracles.johnson_adjacency(7, 3)),
    ("halved 5-cube", IntersectionArray((10, 3), (1, 6)), lambda: oracles.halved_cube_adjacency(5)),
    ("halved 6-cube", IntersectionArray((15, 6, 1), (1, 6, 15)), lambda: oracles.halved_cube_adjacency(6)),
    ("halved 7-cube", IntersectionArray((21, 10, 3), (1, 6, 15)), lambda: oracles.halved_cube_adjacency(7)),
    ("folded 7-cube", IntersectionArray((7, 6, 5), (1, 2, 3)), lambda: oracles.folded_cube_adjacency(7)),
    ("Desargues", DESARGUES, lambda: oracles.doubled_odd_adjacency(3)),
    ("doubled Odd 4", IntersectionArray((4, 3, 3, 2, 2, 1, 1), (1, 1, 2, 2, 3, 3, 4)),
     lambda: oracles.doubled_odd_adjacency(4)),
    ("pentagon", IntersectionArray((2, 1), (1, 1)), lambda: oracles.cycle_adjacency(5)),
    ("heptagon", IntersectionArray((2, 1, 1), (1, 1, 1)), lambda: oracles.cycle_adjacency(7)),
]


def test_tridiagonal_matrix_examples():
    assert tridiagonal_matrix(C4) == [[0, 2, 0], [1, 0, 1], [0, 2, 0]]
    L7 = tridiagonal_matrix(hamming_array(7, 2))
    assert len(L7) == 8 and all(L7[i][i] == 0 for i in range(8))
    assert tridiagonal_matrix(T5) == [[0, 6, 0], [1, 3, 2], [0, 4, 2]]


def test_eigenvalue_examples():
    assert eigenvalues(C4) == [2, 0, -2]
    assert eigenvalues(hamming_array(7, 2)) == [7, 5, 3, 1, -1, -3, -5, -7]
    # T(5): explicit 10-vertex eigendecomposition gives 6, 1, -2
    thetas, _, _ = oracles.eigenspaces(oracles.johnson_adjacency(5, 2))
    assert np.allclose(thetas, [6, 1, -2])
    assert eigenvalues(T5) == [6, 1, -2]


def test_standard_eigenvector_examples():
    assert standard_eigenvector(C4, 0) == [1, 0, -1]
    assert standard_eigenvector(C4, 2) == [1, 1, 1]
    u = standard_eigenvector(T5, -2)
    assert u == [1, Fraction(-1, 3), Fraction(1, 3)]
    assert np.allclose([float(x) for x in u], oracles.standard_vectors(oracles.johnson_adjacency(5, 2))[2])
    with pytest.raises(NotAnEigenvalue):
        standard_eigenvector(T5, -4)


def test_valencies_and_multiplicities_examples():
    assert valencies_and_multiplicities(C4) == ([1, 2, 1], [1, 2, 1])
    ks, ms = valencies_and_multiplicities(hamming_array(7, 2))
    assert ks == [comb(7, i) for i in range(8)] and ms == [comb(7, j) for j in range(8)]
    assert valencies_and_multiplicities(T5) == ([1, 6, 3], [1, 4, 5])


def test_krein_examples():
    kt = krein_parameters(C4)
    assert kt[1, 1, 2] == 2
    for ia in (C4, T5, hamming_array(5, 2), DESARGUES):
        kt = krein_parameters(ia)
        for j in range(ia.D + 1):
            for l in range(ia.D + 1):
                assert kt[0, j, l] == (1 if j == l else 0)


@pytest.mark.parametrize("name, ia, build", FAMILIES, ids=[f[0] for f in FAMILIES])
def test_against_brute_force(name, ia, build):
    adj = build()
    assert oracles.intersection_numbers(adj) == (list(ia.b), list(ia.c))
    thetas, mult, _ = oracles.eigenspaces(adj)
    sp = spectrum(ia)
    assert np.allclose([float(t) for t in sp.thetas], thetas, atol=1e-8)
    assert np.allclose([float(m) for m in sp.multiplicities], mult, atol=1e-8)
    for t, ref in zip(sp.thetas, thetas):
        if isinstance(t, Fraction):
            assert t == round(ref)
    assert np.allclose(np.array(sp.stdvecs, dtype=float), oracles.standard_vectors(adj), atol=1e-8)
    assert np.allclose(krein_parameters(ia).as_array(), oracles.krein_brute(adj), atol=1e-8)
    assert orthogonality_residual(sp) < 1e-8 and krein_residual(ia) < 1e-8


@pytest.mark.parametrize("name, ia, build", FAMILIES, ids=[f[0] for f in FAMILIES])
def test_qpoly_orderings_against_brute_force(name, ia, build):
    ref = oracles.qpoly_orderings_brute(oracles.krein_brute(build()))
    assert sorted(qpoly_orderings(ia)) == sorted(ref)


def test_qpoly_examples():
    natural = tuple(range(1, 8))
    orders = qpoly_orderings(hamming_array(7, 2))
    assert orders[0] == natural
    assert qpoly_orderings(DESARGUES) == []
    assert (1, 2) in qpoly_orderings(T5)


@pytest.mark.parametrize("n, extra", [(3, []), (4, [(3, 2, 1, 4)]), (5, []), (6, [(5, 2, 3, 4, 1, 6)])])
def test_cube_orderings(n, extra):
    # even cubes admit the twisted ordering theta_{D-1}, theta_2, theta_{D-3}, ...
    assert sorted(qpoly_orderings(hamming_array(n, 2))) == sorted([tuple(range(1, n + 1))] + extra)


def test_ten_cube_twisted_ordering_is_qpoly():
    kt = krein_parameters(hamming_array(10, 2))
    assert is_qpoly_ordering(kt, tuple(range(1, 11)))
    assert is_qpoly_ordering(kt, (9, 2, 7, 4, 5, 6, 3, 8, 1, 10))
    assert not is_qpoly_ordering(kt, (2, 1, 3, 4, 5, 6, 7, 8, 9, 10))
    with pytest.raises(ParameterOutOfRange):
        qpoly_orderings(hamming_array(10, 2))


def test_array_validation():
    with pytest.raises(ParameterOutOfRange):
        IntersectionArray((3, 2), (2, 3))
    with pytest.raises(ParameterOutOfRange):
        IntersectionArray((3, 2), (1,))
    with pytest.raises(ParameterOutOfRange):
        IntersectionArray((3, 3), (1, 1))  # a_1 = -1
    with pytest.raises(ParameterOutOfRange):
        IntersectionArray((5,), (1,))
    assert IntersectionArray((5,), (1,), standing=False).D == 1
    assert IntersectionArray.parse("{ 6, 2 ; 1, 4 }") == T5
    assert str(T5) == "{6,2;1,4}"
    with pytest.raises(ParameterOutOfRange):
        IntersectionArray.parse("6,2;1,4")


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(2, 5))
def test_hamming_closed_forms(n, q):
    sp = spectrum(hamming_array(n, q))
    assert list(sp.thetas) == [n * (q - 1) - q * i for i in range(n + 1)]
    assert list(sp.multiplicities) == [comb(n, i) * (q - 1) ** i for i in range(n + 1)]
    assert sp.n == q**n


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 16).flatmap(lambda v: st.tuples(st.just(v), st.integers(2, v - 2))))
def test_johnson_closed_forms(vk):
    v, k = vk
    d = min(k, v - k)
    sp = spectrum(johnson_array(v, k))
    assert list(sp.thetas) == [(k - i) * (v - k - i) - i for i in range(d + 1)]
    assert list(sp.multiplicities) == [comb(v, i) - (comb(v, i - 1) if i else 0) for i in range(d + 1)]
    assert sp.n == comb(v, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(2, 4))
def test_krein_nonnegative_and_symmetric(n, q):
    ia = hamming_array(n, q)
    kt = krein_parameters(ia)
    sp = spectrum(ia)
    arr = kt.as_array()
    assert (arr > -1e-9).all()
    assert np.allclose(arr, arr.transpose(1, 0, 2))
    m = np.array([float(x) for x in sp.multiplicities])
    # m_l q_ij^l is symmetric in all three indices
    t = arr * m[None, None, :]
    assert np.allclose(t, t.transpose(0, 2, 1))
