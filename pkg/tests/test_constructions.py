from fractions import Fraction

import pytest

from jordanalg.algebra import AlgebraTable, LinearMap, check_identity, ideal_closure, is_ideal
from jordanalg.constructions import (
    AlbertMeta,
    CDMeta,
    SpinMeta,
    albert_type,
    cayley_dickson,
    cd_conjugate,
    cd_norm,
    cd_trace,
    diagonal_spin_factor,
    gamma_involution,
    hermitian_subalgebra,
    involution_check,
    matrix_algebra,
    plus_algebra,
    spin_factor,
)
from jordanalg.errors import (
    BadParameters,
    NotAnInvolution,
    NotClosed,
    NotScalar,
    NotSymmetric,
    NotUnital,
)
from jordanalg.fields import RATIONALS, prime_field
from jordanalg.linalg import Matrix, Subspace, solve

F3 = prime_field(3)
F5 = prime_field(5)
F7 = prime_field(7)


def scalar_algebra(field):
    return AlgebraTable(field, 1, {(0, 0, 0): field.one()}, labels=("s",), unit=[1])


def full_matrix_table(field, n):
    return matrix_algebra(scalar_algebra(field), n)


def transpose_map(table, n):
    f = table.field
    images = []
    for i in range(n):
        for j in range(n):
            img = [f.zero()] * (n * n)
            img[j * n + i] = f.one()
            images.append(img)
    return LinearMap.from_images(table, images)


@pytest.fixture(scope="module")
def albert5():
    return albert_type(F5, [-1, -1, -1], [1, 1, 1])


def test_plus_algebra_of_m2():
    a = full_matrix_table(F5, 2)
    p = plus_algebra(a)
    assert p.unit_coords() == a.unit_coords()
    assert check_identity(p, "commutative")
    assert check_identity(p, "jordan")
    assert not check_identity(a, "jordan")
    e12 = p.basis_element(1)
    e21 = p.basis_element(2)
    half = F5.half()
    prod = e12 * e21
    assert prod.coords == (half, F5.zero(), F5.zero(), half)


def test_plus_of_commutative_table_is_identical():
    t = diagonal_spin_factor(F5, [1, 2])
    assert plus_algebra(t) == t


def test_involution_check_examples():
    a = full_matrix_table(F5, 2)
    assert involution_check(a, transpose_map(a, 2))
    assert not involution_check(a, LinearMap.identity(a))
    comm = diagonal_spin_factor(F5, [1, 1])
    assert involution_check(comm, LinearMap.identity(comm))


def test_hermitian_symmetric_matrices():
    a = full_matrix_table(F5, 2)
    sym = plus_algebra(a)
    sigma = LinearMap(sym, transpose_map(a, 2).matrix)
    sub, emb = hermitian_subalgebra(sym, sigma)
    assert sub.dim == 3
    assert emb.nrows == 4 and emb.ncols == 3
    for m in range(3):
        col = [emb.rows[r][m] for r in range(4)]
        img = sigma.matrix.apply(col)
        assert list(img) == col
    u = sub.unit_coords()
    assert u is not None
    assert list(emb.apply(u)) == list(sym.unit_coords())


def test_hermitian_rejects_non_involution():
    a = full_matrix_table(F5, 2)
    with pytest.raises(NotAnInvolution):
        hermitian_subalgebra(a, LinearMap.identity(a))


def test_hermitian_not_closed_under_raw_product():
    # symmetric matrices are closed under (xy + yx)/2 but not under xy
    a = full_matrix_table(F5, 2)
    with pytest.raises(NotClosed):
        hermitian_subalgebra(a, transpose_map(a, 2))


def test_hermitian_identity_on_commutative_gives_everything():
    t = diagonal_spin_factor(F5, [1, 2, 3])
    sub, emb = hermitian_subalgebra(t, LinearMap.identity(t))
    assert sub.dim == t.dim
    assert sub == t


def test_symplectic_hermitian_dimension():
    a = full_matrix_table(F5, 4)
    f = F5
    s = Matrix(f, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    cols = [solve(s, [f.one() if r == k else f.zero() for r in range(4)]) for k in range(4)]
    sinv = Matrix(f, list(zip(*cols)))
    images = []
    for i in range(4):
        for j in range(4):
            eji = [[f.one() if (r == j and c == i) else f.zero() for c in range(4)] for r in range(4)]
            prod = sinv @ Matrix(f, eji) @ s
            images.append([prod.rows[r][c] for r in range(4) for c in range(4)])
    sigma = LinearMap.from_images(a, images)
    assert involution_check(a, sigma)
    sym = plus_algebra(a)
    sub, _ = hermitian_subalgebra(sym, LinearMap(sym, sigma.matrix))
    assert sub.dim == 6


def test_spin_factor_shape():
    t = diagonal_spin_factor(F3, [1, 1])
    assert t.dim == 3
    assert t.labels == ("one", "v1", "v2")
    assert t.unit_coords() == (1, 0, 0)
    assert isinstance(t.meta, SpinMeta)
    assert check_identity(t, "jordan")
    v = t.element([0, 1, 2])
    assert (v * v).coords == (2, 0, 0)


def test_spin_factor_rejects_asymmetric_form():
    with pytest.raises(NotSymmetric):
        spin_factor(Matrix(F3, [[0, 1], [2, 0]]))


def test_spin_zero_form_is_not_simple():
    t = spin_factor(Matrix(F3, [[0]]))
    line = Subspace(F3, 2, [[0, 1]])
    closed = ideal_closure(t, line)
    assert closed == line
    assert closed.dim == 1


def test_spin_nondegenerate_is_simple_over_gf3():
    t = diagonal_spin_factor(F3, [1, 2])
    # every nonzero vector generates the whole algebra as an ideal
    seen = set()
    for a in range(3):
        for b in range(3):
            for c in range(3):
                vec = (a, b, c)
                if vec == (0, 0, 0) or vec in seen:
                    continue
                first = next(x for x in vec if x)
                if first != 1:
                    continue
                seen.add(vec)
                closed = ideal_closure(t, Subspace(F3, 3, [vec]))
                assert closed.dim == 3


def test_cayley_dickson_stage_dims_and_laws():
    two, conj2 = cayley_dickson(F7, [1])
    four, conj4 = cayley_dickson(F7, [1, 2])
    eight, conj8 = cayley_dickson(F7, [1, 2, 3])
    assert (two.dim, four.dim, eight.dim) == (2, 4, 8)
    assert check_identity(two, "commutative") and check_identity(two, "associative")
    assert check_identity(four, "associative") and not check_identity(four, "commutative")
    assert not check_identity(eight, "associative")
    assert check_identity(plus_algebra(eight), "jordan")
    for table, conj in ((two, conj2), (four, conj4), (eight, conj8)):
        assert involution_check(table, conj)
        assert isinstance(table.meta, CDMeta)


def test_cayley_dickson_param_validation():
    with pytest.raises(BadParameters):
        cayley_dickson(F5, [])
    with pytest.raises(BadParameters):
        cayley_dickson(F5, [1, 1, 1, 1])
    with pytest.raises(BadParameters):
        cayley_dickson(F5, [1, 0, 1])


def test_cd_trace_norm_frozen_values():
    oct5, _ = cayley_dickson(F5, [-1, -1, -1])
    one = oct5.one()
    e = oct5.basis_element(1)
    assert cd_trace(one).value == 2
    assert cd_norm(one).value == 1
    assert cd_trace(e).value == 0
    # n(e) = -mu1 and mu1 = -1 here
    assert cd_norm(e).value == 1
    assert (e * e).coords == tuple(F5.coerce(x) for x in (-1, 0, 0, 0, 0, 0, 0, 0))


def test_cd_norm_multiplicative_and_scalar_parts():
    import random

    oct3, _ = cayley_dickson(F3, [-1, -1, -1])
    rng = random.Random(11)
    for _ in range(100):
        x = oct3.element([rng.randrange(3) for _ in range(8)])
        y = oct3.element([rng.randrange(3) for _ in range(8)])
        assert (x + cd_conjugate(x)).coords[1:] == (0,) * 7
        assert (x * cd_conjugate(x)).coords[1:] == (0,) * 7
        assert cd_norm(x * y).value == (cd_norm(x) * cd_norm(y)).value


def test_cd_trace_rejects_non_cd_table():
    t = diagonal_spin_factor(F5, [1, 1])
    with pytest.raises(BadParameters):
        cd_trace(t.one())


def test_matrix_algebra_shape():
    m2 = full_matrix_table(F3, 2)
    assert m2.dim == 4
    assert m2.labels == ("e11", "e12", "e21", "e22")
    assert m2.nonzero_count() == 8
    assert m2.unit_coords() == (1, 0, 0, 1)
    assert check_identity(m2, "associative")
    m3 = full_matrix_table(F3, 3)
    assert m3.dim == 9
    assert m3.nonzero_count() == 27
    q4, _ = cayley_dickson(F3, [1, 2])
    over_q = matrix_algebra(q4, 2)
    assert over_q.dim == 16
    assert over_q.labels[0] == "e11_e0"
    assert check_identity(over_q, "associative")


def test_matrix_algebra_requires_unital_coefficients():
    nil = AlgebraTable(F5, 1, {})
    with pytest.raises(NotUnital):
        matrix_algebra(nil, 2)


def test_gamma_involution_validation():
    oct5, conj = cayley_dickson(F5, [-1, -1, -1])
    c3 = matrix_algebra(oct5, 3)
    with pytest.raises(BadParameters):
        gamma_involution(c3, [1, 1], conj.matrix)
    with pytest.raises(BadParameters):
        gamma_involution(c3, [1, 0, 1], conj.matrix)
    sigma = gamma_involution(c3, [1, 2, 3], conj.matrix)
    assert involution_check(c3, sigma)


def test_albert_shape(albert5):
    assert albert5.dim == 27
    assert isinstance(albert5.meta, AlbertMeta)
    assert check_identity(albert5, "jordan")
    assert not check_identity(albert5, "associative")
    assert albert5.labels[0] == "e11"
    assert albert5.labels[1] == "u12_0"
    assert albert5.labels.count("e22") == 1


def test_albert_idempotents(albert5):
    m = albert5.meta
    es = [albert5.element(c) for c in m.idempotents]
    for i, e in enumerate(es):
        assert e * e == e
        for j in range(i + 1, 3):
            assert (e * es[j]).is_zero()
    total = es[0] + es[1] + es[2]
    assert total == albert5.one()


def test_albert_peirce_partition(albert5):
    m = albert5.meta
    dims = {key: space.dim for key, space in m.peirce.items()}
    assert dims == {(1, 1): 1, (2, 2): 1, (3, 3): 1, (1, 2): 8, (1, 3): 8, (2, 3): 8}
    total = sum(dims.values())
    assert total == 27
    # labels agree with the component a basis vector was assigned to
    for key, space in m.peirce.items():
        for row in space.basis:
            idx = next(i for i, x in enumerate(row) if x)
            label = albert5.labels[idx]
            if key[0] == key[1]:
                assert label == f"e{key[0]}{key[1]}"
            else:
                assert label.startswith(f"u{key[0]}{key[1]}_")


def test_albert_nontrivial_gamma_is_jordan():
    t = albert_type(F7, [1, 2, 3], [1, 2, 3])
    assert t.dim == 27
    assert check_identity(t, "jordan")


def test_albert_rational_build():
    t = albert_type(RATIONALS, [-1, -1, -1], [1, 2, Fraction(1, 3)])
    assert t.dim == 27
    m = t.meta
    assert m.gammas == (1, 2, Fraction(1, 3))
    es = [t.element(c) for c in m.idempotents]
    assert es[0] + es[1] + es[2] == t.one()


def test_albert_param_validation():
    with pytest.raises(BadParameters):
        albert_type(F5, [-1, -1], [1, 1, 1])
    with pytest.raises(BadParameters):
        albert_type(F5, [-1, -1, -1], [1, 0, 1])
