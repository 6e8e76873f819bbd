import itertools
import random

import pytest

from jordanalg.algebra import AlgebraTable, invert_element
from jordanalg.constructions import (
    albert_type,
    cayley_dickson,
    diagonal_spin_factor,
    hermitian_subalgebra,
    matrix_algebra,
    plus_algebra,
)
from jordanalg.errors import (
    BadParameters,
    IncompletePeirce,
    NotAlbertType,
    NotIdempotent,
    NotSpinFactor,
    NotUnital,
)
from jordanalg.fields import prime_field
from jordanalg.jordan import (
    albert_norm,
    albert_slots,
    is_idempotent,
    jordan_inverse,
    left_multiplication,
    peirce_frame,
    peirce_single,
    power,
    spin_norm,
)
from jordanalg.linalg import Matrix

F3 = prime_field(3)
F5 = prime_field(5)
F7 = prime_field(7)


@pytest.fixture(scope="module")
def albert5():
    return albert_type(F5, [-1, -1, -1], [1, 1, 1])


def scalar_algebra(field):
    return AlgebraTable(field, 1, {(0, 0, 0): field.one()}, labels=("s",), unit=[1])


def test_spin_inverse_frozen_values():
    spin = diagonal_spin_factor(F5, [1, 1])
    # f(v,v) = 1 + 4 = 0 mod 5: nonzero element with no inverse
    v = spin.element([0, 1, 2])
    assert spin_norm(v).value == 0
    assert jordan_inverse(v) is None
    # f(v,v) = 2: inverse is v / f(v,v)
    w = spin.element([0, 1, 1])
    winv = jordan_inverse(w)
    assert winv is not None
    assert winv.coords == (0, 3, 3)
    assert (w * winv) == spin.one()
    assert (w * w) * winv == w


def test_inverse_of_unit_and_zero():
    spin = diagonal_spin_factor(F7, [1, 2, 3])
    assert jordan_inverse(spin.one()) == spin.one()
    assert jordan_inverse(spin.zero()) is None


def test_inverse_needs_unit():
    nil = AlgebraTable(F5, 1, {})
    with pytest.raises(NotUnital):
        jordan_inverse(nil.element([1]))


def test_inverse_agrees_under_basis_permutation():
    # solving in a permuted coordinate order must give the same inverse
    spin = diagonal_spin_factor(F5, [1, 2, 4])
    perm = (2, 0, 3, 1)
    inv_perm = [perm.index(t) for t in range(4)]
    entries = {}
    for i, j, k, v in spin.sc_items():
        entries[(perm[i], perm[j], perm[k])] = v
    unit = [spin.field.zero()] * 4
    unit[perm[0]] = spin.field.one()
    shuffled = AlgebraTable(F5, 4, entries, unit=unit)
    rng = random.Random(3)
    for _ in range(40):
        coords = [rng.randrange(5) for _ in range(4)]
        direct = jordan_inverse(spin.element(coords))
        moved = shuffled.element([coords[inv_perm[t]] for t in range(4)])
        via = jordan_inverse(moved)
        if direct is None:
            assert via is None
        else:
            assert via is not None
            assert tuple(via.coords[perm[t]] for t in range(4)) == direct.coords


def test_power_basics():
    spin = diagonal_spin_factor(F5, [1, 2])
    x = spin.element([2, 1, 3])
    assert power(x, 0) == spin.one()
    assert power(x, 1) == x
    assert power(x, 2) == x * x
    assert power(x, 3) == (x * x) * x
    with pytest.raises(BadParameters):
        power(x, -1)


def test_power_associativity_sample():
    spin = diagonal_spin_factor(F7, [1, 1, 2])
    rng = random.Random(9)
    for _ in range(30):
        x = spin.element([rng.randrange(7) for _ in range(4)])
        assert power(x, 2) * power(x, 2) == power(x, 4)
        assert power(x, 2) * power(x, 3) == power(x, 5)


def test_idempotents():
    spin = diagonal_spin_factor(F5, [1, 1])
    assert is_idempotent(spin.one())
    assert is_idempotent(spin.zero())
    # alpha = 1/2 = 3 and f(v,v) = alpha - alpha^2 = -6 = 4 mod 5
    e = spin.element([3, 0, 2])
    assert is_idempotent(e)
    assert not is_idempotent(spin.element([1, 1, 0]))


def test_peirce_single_spin():
    spin = diagonal_spin_factor(F5, [1, 1])
    e = spin.element([3, 0, 2])
    j1, jh, j0 = peirce_single(e)
    assert (j1.dim, jh.dim, j0.dim) == (1, 1, 1)
    assert j1.contains_vector(list(e.coords))
    comp = spin.one() - e
    assert j0.contains_vector(list(comp.coords))


def test_peirce_single_unit_and_errors():
    spin = diagonal_spin_factor(F5, [1, 2])
    j1, jh, j0 = peirce_single(spin.one())
    assert (j1.dim, jh.dim, j0.dim) == (3, 0, 0)
    with pytest.raises(NotIdempotent):
        peirce_single(spin.element([0, 1, 0]))


def test_peirce_incomplete_on_non_jordan_table():
    # e x = 2x puts x outside every admissible eigenvalue
    t = AlgebraTable(F5, 2, {(0, 0, 0): 1, (0, 1, 1): 2, (1, 0, 1): 2})
    e = t.element([1, 0])
    with pytest.raises(IncompletePeirce):
        peirce_single(e)


def test_peirce_e11_dims(albert5):
    e11 = albert5.element(albert5.meta.idempotents[0])
    j1, jh, j0 = peirce_single(e11)
    assert (j1.dim, jh.dim, j0.dim) == (1, 16, 10)


def test_peirce_frame_matches_stored_labels(albert5):
    frame = peirce_frame(albert5)
    dims = {k: v.dim for k, v in frame.items()}
    assert dims == {(1, 1): 1, (2, 2): 1, (3, 3): 1, (1, 2): 8, (1, 3): 8, (2, 3): 8}
    for key, space in frame.items():
        assert space == albert5.meta.peirce[key]


def test_peirce_frame_needs_albert_metadata():
    spin = diagonal_spin_factor(F5, [1, 1])
    with pytest.raises(NotAlbertType):
        peirce_frame(spin)


def test_left_multiplication_matrix():
    spin = diagonal_spin_factor(F3, [1, 1])
    lv = left_multiplication(spin.element([0, 1, 0]))
    assert lv == Matrix(F3, [[0, 1, 0], [1, 0, 0], [0, 0, 0]])


def test_spin_norm_frozen_values():
    spin = diagonal_spin_factor(F5, [1, 1])
    assert spin_norm(spin.one()).value == 1
    assert spin_norm(spin.element([0, 1, 2])).value == 0
    v = spin.element([0, 1, 1])
    assert spin_norm(v).value == (0 - 2) % 5
    with pytest.raises(NotSpinFactor):
        spin_norm(scalar_algebra(F5).one())


def test_spin_norm_decides_invertibility_exhaustively_over_gf3():
    for diag in ([0], [1], [2], [1, 1], [1, 2], [2, 2], [0, 1], [0, 0]):
        spin = diagonal_spin_factor(F3, diag)
        for coords in itertools.product(range(3), repeat=spin.dim):
            x = spin.element(list(coords))
            has_inverse = jordan_inverse(x) is not None
            assert has_inverse == (spin_norm(x).value != 0)


def test_albert_norm_frozen_values(albert5):
    assert albert_norm(albert5.one()).value == 1
    e11 = albert5.element(albert5.meta.idempotents[0])
    assert albert_norm(e11).value == 0
    assert jordan_inverse(e11) is None
    for lam in range(5):
        scaled = albert5.one().scale(lam)
        assert albert_norm(scaled).value == pow(lam, 3, 5)


def test_albert_norm_vanishes_off_diagonal_without_a_slot(albert5):
    # zero diagonal and nothing in the (2,3) component forces norm 0
    rng = random.Random(17)
    labels = albert5.labels
    for _ in range(20):
        coords = [0] * 27
        for idx, label in enumerate(labels):
            if label.startswith("u12_") or label.startswith("u13_"):
                coords[idx] = rng.randrange(5)
        x = albert5.element(coords)
        assert albert_norm(x).value == 0
        if not x.is_zero():
            assert jordan_inverse(x) is None


def test_albert_slots_read_the_display(albert5):
    diag, a, b, c = albert_slots(albert5.one())
    assert diag == (1, 1, 1)
    assert a.is_zero() and b.is_zero() and c.is_zero()
    u23 = albert5.element([1 if l == "u23_0" else 0 for l in albert5.labels])
    diag, a, b, c = albert_slots(u23)
    assert diag == (0, 0, 0)
    assert not a.is_zero()
    assert b.is_zero() and c.is_zero()
    with pytest.raises(NotAlbertType):
        albert_slots(diagonal_spin_factor(F5, [1, 1]).one())


def test_albert_norm_decides_invertibility_sampled(albert5):
    rng = random.Random(23)
    for _ in range(150):
        x = albert5.element([rng.randrange(5) for _ in range(27)])
        assert (albert_norm(x).value != 0) == (jordan_inverse(x) is not None)


def test_albert_norm_with_nontrivial_parameters():
    alb = albert_type(F7, [1, 2, 3], [1, 2, 3])
    assert albert_norm(alb.one()).value == 1
    rng = random.Random(29)
    for _ in range(80):
        x = alb.element([rng.randrange(7) for _ in range(27)])
        assert (albert_norm(x).value != 0) == (jordan_inverse(x) is not None)


def test_plus_inverse_matches_ambient_associative():
    assoc = matrix_algebra(scalar_algebra(F5), 2)
    sym = plus_algebra(assoc)
    rng = random.Random(31)
    for _ in range(100):
        coords = [rng.randrange(5) for _ in range(4)]
        amb = invert_element(assoc.element(coords))
        jor = jordan_inverse(sym.element(coords))
        assert (amb is None) == (jor is None)
        if amb is not None:
            assert amb.coords == jor.coords


def test_hermitian_inverse_matches_ambient():
    from jordanalg.algebra import LinearMap

    assoc = matrix_algebra(scalar_algebra(F5), 2)
    sym = plus_algebra(assoc)
    transpose = LinearMap.from_images(
        sym, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )
    sub, emb = hermitian_subalgebra(sym, transpose)
    rng = random.Random(37)
    for _ in range(60):
        coords = [rng.randrange(5) for _ in range(sub.dim)]
        x = sub.element(coords)
        ambient = assoc.element(emb.apply(coords))
        amb_inv = invert_element(ambient)
        sub_inv = jordan_inverse(x)
        assert (amb_inv is None) == (sub_inv is None)
        if sub_inv is not None:
            assert tuple(emb.apply(sub_inv.coords)) == amb_inv.coords
