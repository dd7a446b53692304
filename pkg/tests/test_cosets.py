import io
import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from crcodes.codes import QuotientMatrix, code_spectrum, is_completely_regular
from crcodes.corpus import CORPUS, even_weight_code, hamming_code, repetition_code
from crcodes.cosets import (AdditiveCode, coset_graph, coset_partition, edge_multiplicity,
                            is_completely_regular_partition, null_space, quotient_relation_check, read_generators,
                            rifa_zinoviev, row_reduce, rz_parity_check, write_generators)
from crcodes.errors import FileFormatError, ParameterOutOfRange
from crcodes.graphs import halved_cube, hamming, is_distance_regular
from crcodes.leonard import qpoly_test
from crcodes.spectral import IntersectionArray, qpoly_orderings, spectrum


def gf_rank(m, q):
    return len(row_reduce(np.array(m), q)[0])


def test_coset_partition_examples():
    part = coset_partition(hamming_code(3))
    assert len(part) == 8 and {len(c) for c in part.cells} == {16}
    part = coset_partition(rifa_zinoviev(4, 2))
    assert len(part) == 8 and {len(c) for c in part.cells} == {8}
    full = AdditiveCode.from_generators(np.eye(3, dtype=int).tolist(), 3)
    assert len(coset_partition(full)) == 1


def test_cosets_are_translates():
    c = rifa_zinoviev(4, 2)
    words = {tuple(w) for w in c.words().tolist()}
    part = coset_partition(c)
    for cell in part.cells:
        x = np.array([int(d) for d in format(cell[0], "06b")])
        translate = {tuple((np.array(w) + x) % 2) for w in words}
        assert {tuple(int(d) for d in format(v, "06b")) for v in cell} == translate


def test_cr_partition_examples():
    g = hamming(7, 2)
    assert is_completely_regular_partition(g, coset_partition(hamming_code(3)).cells)
    g = hamming(6, 2)
    assert is_completely_regular_partition(g, coset_partition(rifa_zinoviev(4, 2)).cells)
    cells = [tuple(range(10)), tuple(range(10, 64))]
    assert not is_completely_regular_partition(g, cells)


def test_coset_graph_examples():
    g = hamming(7, 2)
    ham = hamming_code(3)
    q = coset_graph(g, ham)
    assert (q.n, q.valency) == (8, 7)
    assert is_distance_regular(q) == IntersectionArray((7,), (1,), standing=False)
    q = coset_graph(hamming(6, 2), rifa_zinoviev(4, 2))
    assert is_distance_regular(q) == IntersectionArray((6, 1), (1, 6))
    q = coset_graph(hamming(10, 2), rifa_zinoviev(5, 2))
    assert q.n == 16
    assert is_distance_regular(q) == halved_cube(5).intersection_array()


def test_quotient_relation_examples():
    u = QuotientMatrix((0, 1), (0, 6), (7, 0))
    assert quotient_relation_check(u, IntersectionArray((7,), (1,), standing=False))
    u = QuotientMatrix.from_matrix([[0, 6, 0], [1, 4, 1], [0, 6, 0]])
    assert quotient_relation_check(u, halved_cube(4).intersection_array())
    g = hamming(2, 2)
    rep = repetition_code(2)
    u = is_completely_regular(g, rep.as_code(g))
    assert u.matrix() == [[0, 2], [2, 0]]
    q = coset_graph(g, rep)
    assert edge_multiplicity(g, rep) == 2
    assert quotient_relation_check(u, is_distance_regular(q))
    assert not quotient_relation_check(u, IntersectionArray((3,), (1,), standing=False))


def test_rz_dimensions():
    assert rifa_zinoviev(4, 2).n == 6 and rifa_zinoviev(4, 2).dimension == 3
    assert rifa_zinoviev(5, 2).n == 10 and rifa_zinoviev(5, 2).dimension == 6
    for m in (3, 4, 5, 6):
        assert gf_rank(rz_parity_check(m, 2), 2) == m - 1
    h = rz_parity_check(4, 2)
    assert h[:, 0].tolist() == [0, 0, 1, 1] and h[:, 1].tolist() == [0, 1, 0, 1]
    with pytest.raises(ParameterOutOfRange):
        rifa_zinoviev(2, 2)
    with pytest.raises(ParameterOutOfRange):
        rifa_zinoviev(8, 3)


@pytest.mark.parametrize("m", [4, 5])
def test_rz_coset_graph_qpoly(m):
    q = coset_graph(hamming(m * (m - 1) // 2, 2), rifa_zinoviev(m, 2))
    assert qpoly_orderings(is_distance_regular(q))


def test_null_space_is_orthogonal_and_full():
    h = rz_parity_check(5, 2)
    ns = null_space(h, 2, h.shape[1])
    assert not ((h @ ns.T) % 2).any()
    assert len(ns) == h.shape[1] - gf_rank(h, 2)


def test_generator_file_round_trip(tmp_path):
    c = rifa_zinoviev(4, 2)
    buf = io.StringIO()
    write_generators(c, buf)
    assert len(buf.getvalue().splitlines()) == 3
    p = tmp_path / "rz.txt"
    p.write_text("# RZ(4,2)\n" + buf.getvalue())
    back = read_generators(str(p))
    assert (back.basis == c.basis).all()
    p.write_text("100110\n01010\n")
    with pytest.raises(FileFormatError) as err:
        read_generators(str(p))
    assert err.value.line == 2
    p.write_text("100120\n")
    with pytest.raises(FileFormatError):
        read_generators(str(p))


def test_composite_alphabet_rejected():
    with pytest.raises(ParameterOutOfRange):
        AdditiveCode.from_generators([[1, 1]], 4)


ADDITIVE = [e for e in CORPUS if "additive" in e.tags]


@pytest.mark.parametrize("e", ADDITIVE, ids=lambda e: e.name)
def test_additive_corpus(e):
    g, c, add = e.build()
    assert add.closure_ok()
    u = is_completely_regular(g, c)
    part = coset_partition(add)
    assert len(part) == add.q ** (add.n - add.dimension)
    q = coset_graph(g, add, part)
    qa = is_distance_regular(q)
    assert isinstance(qa, IntersectionArray)
    assert quotient_relation_check(u, qa)
    assert edge_multiplicity(g, add, part) == u.gamma[1]
    # eigenvalues of the quotient are (eta - alpha_0) / gamma_1
    cs = code_spectrum(u, spectrum(g.intersection_array()))
    mapped = sorted(Fraction(e - u.alpha[0]) / u.gamma[1] for e in cs.etas)
    assert mapped == sorted(spectrum(qa).thetas) if cs.exact else True


@pytest.mark.parametrize("e", [e for e in ADDITIVE if e.graph[1] <= 10], ids=lambda e: e.name)
def test_additive_code_qpoly_iff_quotient_qpoly(e):
    g, c, add = e.build()
    u = is_completely_regular(g, c)
    cs = code_spectrum(u, spectrum(g.intersection_array()))
    qa = is_distance_regular(coset_graph(g, add))
    code_q = qpoly_test(u, cs).flag
    graph_q = bool(qpoly_orderings(qa)) if qa.D >= 2 else True
    assert code_q == graph_q
    assert is_completely_regular_partition(g, coset_partition(add).cells)


@st.composite
def binary_codes(draw):
    n = draw(st.integers(2, 8))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=1, max_size=n))
    return AdditiveCode.from_generators(rows, 2, n)


@settings(max_examples=80, deadline=None)
@given(binary_codes())
def test_random_additive_codes(c):
    assert c.closure_ok()
    ref = {tuple(sum(a * b for a, b in zip(coef, col)) % 2 for col in zip(*c.basis.tolist()))
           for coef in itertools.product((0, 1), repeat=c.dimension)} if c.dimension else {(0,) * c.n}
    assert {tuple(w) for w in c.words().tolist()} == ref
    part = coset_partition(c)
    assert len(part) == 2 ** (c.n - c.dimension)
    assert sorted(v for cell in part.cells for v in cell) == list(range(2**c.n))
    g = hamming(c.n, 2)
    code = c.as_code(g)
    u = is_completely_regular(g, code)
    if isinstance(u, QuotientMatrix) and u.rho >= 1:
        assert is_completely_regular_partition(g, part.cells)
        qa = is_distance_regular(coset_graph(g, c, part))
        assert quotient_relation_check(u, qa)
        assert oracles.intersection_numbers(
            [coset_graph(g, c, part).neighbors(v).tolist() for v in range(len(part))]) == (list(qa.b), list(qa.c))


def test_even_weight_is_zero_sum():
    c = even_weight_code(4, 3)
    assert (c.words().sum(axis=1) % 3 == 0).all() and c.size == 27
