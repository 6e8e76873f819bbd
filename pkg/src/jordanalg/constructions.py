"""Factories for the algebra families the package studies.

Covers the symmetrized product on an associative algebra, hermitian
subalgebras under an involution, spin factors of symmetric bilinear
forms, Cayley-Dickson doublings with their conjugation, matrix algebras
with coefficients in a (possibly nonassociative) unital algebra, the
diagonal gamma involution on 3x3 coefficient matrices, and the
27-dimensional hermitian algebras assembled from all of the above.

Each factory attaches the metadata later stages need: the spin gram
matrix, the Cayley-Dickson doubling scalars and conjugation, and for
the 27-dimensional family the embedding, diagonal idempotents and
Peirce component layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraTable, Element, LinearMap
from .errors import (
    BadParameters,
    NotAnInvolution,
    NotClosed,
    NotScalar,
    NotSymmetric,
    NotUnital,
)
from .fields import Field, RawScalar, Scalar
from .linalg import Matrix, Subspace


@dataclass(frozen=True)
class SpinMeta:
    gram: Matrix


@dataclass(frozen=True)
class CDMeta:
    mus: tuple
    conj: Matrix


@dataclass(frozen=True)
class AlbertMeta:
    gammas: tuple
    mus: tuple
    coeff: AlgebraTable
    coeff_conj: Matrix
    embedding: Matrix
    idempotents: tuple
    peirce: dict


def plus_algebra(table: AlgebraTable) -> AlgebraTable:
    """Same space with the symmetrized product x o y = (xy + yx) / 2."""
    f = table.field
    half = f.half()
    acc: dict[tuple[int, int, int], RawScalar] = {}
    for i, j, k, v in table.sc_items():
        for key in ((i, j, k), (j, i, k)):
            prev = acc.get(key, f.zero())
            acc[key] = f.add(prev, f.mul(half, v))
    return AlgebraTable(
        f, table.dim, acc, labels=table.labels, unit=table.unit_coords()
    )


def involution_check(table: AlgebraTable, sigma: LinearMap) -> bool:
    """sigma^2 = id and sigma(xy) = sigma(y) sigma(x) on all basis pairs."""
    if sigma.algebra is not table and sigma.algebra != table:
        return False
    n = table.dim
    if sigma.matrix @ sigma.matrix != Matrix.identity(table.field, n):
        return False
    std = Matrix.identity(table.field, n).rows
    images = [sigma.matrix.apply(vec) for vec in std]
    for i in range(n):
        for j in range(n):
            lhs = sigma.matrix.apply(table.mul_coords(std[i], std[j]))
            rhs = table.mul_coords(images[j], images[i])
            if list(lhs) != list(rhs):
                return False
    return True


def hermitian_subalgebra(table: AlgebraTable, sigma: LinearMap) -> tuple[AlgebraTable, Matrix]:
    """Fixed space of an involution with the table's product restricted.

    The input table must already carry the intended (symmetrized)
    product; closure of the fixed space is re-verified element by
    element rather than assumed.  Returns the subalgebra table and the
    embedding matrix whose columns are the fixed basis vectors.
    """
    if not involution_check(table, sigma):
        raise NotAnInvolution("map is not an involution of the table")
    f = table.field
    n = table.dim
    constraint = sigma.matrix - Matrix.identity(f, n)
    fixed = constraint.nullspace()
    m = fixed.dim
    if m == 0:
        raise NotClosed("fixed space of the involution is zero")
    basis = [list(v) for v in fixed.basis]
    entries = {}
    for a in range(m):
        for b in range(m):
            prod = table.mul_coords(basis[a], basis[b])
            coords = fixed.coords_of(prod)
            if coords is None:
                raise NotClosed("fixed space is not closed under the product")
            for k, v in enumerate(coords):
                if v:
                    entries[(a, b, k)] = v
    unit = None
    ambient_unit = table.unit_coords()
    if ambient_unit is not None:
        unit = fixed.coords_of(list(ambient_unit))
    sub = AlgebraTable(f, m, entries, unit=unit)
    embedding = Matrix(f, list(zip(*basis)))
    return sub, embedding


def spin_factor(gram: Matrix) -> AlgebraTable:
    """The Jordan algebra of a symmetric bilinear form on F + V.

    Basis (1, v_1 .. v_n); the product is
    (alpha + v)(beta + u) = alpha beta + f(v, u) + alpha u + beta v.
    """
    if not gram.is_symmetric():
        raise NotSymmetric("spin factor needs a symmetric form")
    nv = gram.nrows
    if nv < 1:
        raise BadParameters("form must act on a space of dimension >= 1")
    f = gram.field
    dim = nv + 1
    entries: dict[tuple[int, int, int], RawScalar] = {}
    entries[(0, 0, 0)] = f.one()
    for j in range(1, dim):
        entries[(0, j, j)] = f.one()
        entries[(j, 0, j)] = f.one()
    for i in range(nv):
        for j in range(nv):
            v = gram.rows[i][j]
            if v:
                entries[(i + 1, j + 1, 0)] = v
    labels = ("one",) + tuple(f"v{i}" for i in range(1, dim))
    unit = [f.one()] + [f.zero()] * nv
    return AlgebraTable(f, dim, entries, labels=labels, unit=unit, meta=SpinMeta(gram))


def diagonal_spin_factor(field: Field, diag: Sequence) -> AlgebraTable:
    """Spin factor of the diagonal form with the given entries."""
    entries = [field.coerce(x) for x in diag]
    n = len(entries)
    zero = field.zero()
    rows = [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]
    return spin_factor(Matrix(field, rows))


# ---------------------------------------------------------------------------
# Cayley-Dickson doubling


def _double(table: AlgebraTable, conj: Matrix, mu: RawScalar) -> tuple[AlgebraTable, Matrix]:
    f = table.field
    d = table.dim
    zero = f.zero()

    def conj_coords(vec):
        return list(conj.apply(vec))

    entries = {}
    for i in range(d):
        xi = [zero] * d
        xi[i] = f.one()
        xi_bar = conj_coords(xi)
        for j in range(d):
            xj = [zero] * d
            xj[j] = f.one()
            xj_bar = conj_coords(xj)
            # (x_i, 0)(x_j, 0) = (x_i x_j, 0)
            for k, v in enumerate(table.mul_coords(xi, xj)):
                if v:
                    entries[(i, j, k)] = v
            # (x_i, 0)(0, x_j) = (0, x_j x_i)
            for k, v in enumerate(table.mul_coords(xj, xi)):
                if v:
                    entries[(i, j + d, k + d)] = v
            # (0, x_i)(x_j, 0) = (0, x_i conj(x_j))
            for k, v in enumerate(table.mul_coords(xi, xj_bar)):
                if v:
                    entries[(i + d, j, k + d)] = v
            # (0, x_i)(0, x_j) = (mu conj(x_j) x_i, 0)
            for k, v in enumerate(table.mul_coords(xj_bar, xi)):
                if v:
                    entries[(i + d, j + d, k)] = f.mul(mu, v)
    labels = tuple(f"e{t}" for t in range(2 * d))
    unit = [f.one()] + [zero] * (2 * d - 1)
    doubled = AlgebraTable(f, 2 * d, entries, labels=labels, unit=unit)
    conj_rows = [[zero] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        for k in range(d):
            conj_rows[k][i] = conj.rows[k][i]
    for i in range(d):
        conj_rows[i + d][i + d] = f.neg(f.one())
    return doubled, Matrix(f, conj_rows)


def cayley_dickson(field: Field, mus: Sequence) -> tuple[AlgebraTable, LinearMap]:
    """Iterated doubling of the base field by the given nonzero scalars.

    One scalar gives the dimension-2 algebra, two give dimension 4,
    three give dimension 8.  Returns the algebra and its conjugation;
    the doubling scalars and the conjugation matrix ride along as
    metadata.
    """
    raw_mus = tuple(field.coerce(m) for m in mus)
    if not 1 <= len(raw_mus) <= 3:
        raise BadParameters("between one and three doubling scalars")
    if any(not m for m in raw_mus):
        raise BadParameters("doubling scalars must be nonzero")
    table = AlgebraTable(field, 1, {(0, 0, 0): field.one()}, labels=("e0",), unit=[field.one()])
    conj = Matrix.identity(field, 1)
    for mu in raw_mus:
        table, conj = _double(table, conj, mu)
    final = AlgebraTable(
        field,
        table.dim,
        {(i, j, k): v for i, j, k, v in table.sc_items()},
        labels=table.labels,
        unit=table.unit_coords(),
        meta=CDMeta(mus=raw_mus, conj=conj),
    )
    return final, LinearMap(final, conj)


def _cd_meta(table: AlgebraTable) -> CDMeta:
    if not isinstance(table.meta, CDMeta):
        raise BadParameters("element does not belong to a Cayley-Dickson algebra")
    return table.meta


def cd_conjugate(x: Element) -> Element:
    meta = _cd_meta(x.algebra)
    return Element(x.algebra, meta.conj.apply(x.coords))


def _scalar_part(x: Element, context: str) -> Scalar:
    if any(x.coords[1:]):
        raise NotScalar(f"{context} is not a scalar multiple of the unit")
    return Scalar(x.algebra.field, x.coords[0])


def cd_trace(x: Element) -> Scalar:
    """t(x) = x + conj(x), read off as a scalar."""
    return _scalar_part(x + cd_conjugate(x), "trace")


def cd_norm(x: Element) -> Scalar:
    """n(x) = x * conj(x), read off as a scalar."""
    return _scalar_part(x * cd_conjugate(x), "norm")


# ---------------------------------------------------------------------------
# matrix algebras over a coefficient algebra


def matrix_algebra(coeff: AlgebraTable, n: int) -> AlgebraTable:
    """n x n matrices with entries in a unital coefficient algebra.

    Basis vectors are a E_{ij} ordered by (i, j, a); the product is the
    usual matrix product with coefficient products taken in `coeff`,
    which may be nonassociative.
    """
    if coeff.unit_coords() is None:
        raise NotUnital("coefficient algebra must be unital")
    if n < 1:
        raise BadParameters("matrix size must be positive")
    f = coeff.field
    d = coeff.dim
    dim = n * n * d

    def index(i: int, j: int, a: int) -> int:
        return (i * n + j) * d + a

    entries = {}
    for a, b, k, v in coeff.sc_items():
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    entries[(index(i, j, a), index(j, l, b), index(i, l, k))] = v
    if coeff.dim == 1:
        labels = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    else:
        labels = tuple(
            f"e{i + 1}{j + 1}_{coeff.label_of(a)}"
            for i in range(n)
            for j in range(n)
            for a in range(d)
        )
    unit_coeff = coeff.unit_coords()
    unit = [f.zero()] * dim
    for i in range(n):
        for a, v in enumerate(unit_coeff):
            unit[index(i, i, a)] = v
    return AlgebraTable(f, dim, entries, labels=labels, unit=unit)


def gamma_involution(c3: AlgebraTable, gammas: Sequence, conj: Matrix) -> LinearMap:
    """The involution X -> gamma^{-1} conj(X)^T gamma on 3x3 coefficient
    matrices, for gamma = diag(gamma_1, gamma_2, gamma_3).

    Sends a E_{ij} to (gamma_j^{-1} gamma_i) conj(a) E_{ji}; verified to
    be an involution of the table before it is returned.
    """
    f = c3.field
    raw = tuple(f.coerce(g) for g in gammas)
    if len(raw) != 3:
        raise BadParameters("need exactly three gamma scalars")
    if any(not g for g in raw):
        raise BadParameters("gamma scalars must be nonzero")
    d = conj.nrows
    if c3.dim != 9 * d:
        raise BadParameters("table is not 3x3 over the given coefficients")
    zero = f.zero()
    rows = [[zero] * c3.dim for _ in range(c3.dim)]
    for i in range(3):
        for j in range(3):
            factor = f.mul(f.inv(raw[j]), raw[i])
            for a in range(d):
                src = (i * 3 + j) * d + a
                for k in range(d):
                    c = conj.rows[k][a]
                    if c:
                        dst = (j * 3 + i) * d + k
                        rows[dst][src] = f.mul(factor, c)
    sigma = LinearMap(c3, Matrix(f, rows))
    if not involution_check(c3, sigma):
        raise NotAnInvolution("gamma map failed the involution laws")
    return sigma


# ---------------------------------------------------------------------------
# the 27-dimensional hermitian family


def albert_type(field: Field, mus: Sequence, gammas: Sequence) -> AlgebraTable:
    """H(C_3, gamma involution): the 27-dimensional Jordan algebra of
    hermitian 3x3 matrices over the stage-3 Cayley-Dickson algebra.

    Metadata records the doubling and gamma parameters, the coefficient
    algebra and its conjugation, the embedding into the 72-dimensional
    matrix space, the three diagonal idempotents, and the Peirce
    component of every basis vector.
    """
    mus = tuple(mus)
    if len(mus) != 3:
        raise BadParameters("need three doubling scalars")
    coeff, conj_map = cayley_dickson(field, mus)
    c3 = matrix_algebra(coeff, 3)
    sigma = gamma_involution(c3, gammas, conj_map.matrix)
    sym = plus_algebra(c3)
    sigma_sym = LinearMap(sym, sigma.matrix)
    sub, embedding = hermitian_subalgebra(sym, sigma_sym)
    if sub.dim != 27:
        raise NotClosed(f"hermitian fixed space has dimension {sub.dim}, expected 27")

    d = coeff.dim
    raw_gammas = tuple(field.coerce(g) for g in gammas)

    def slot_of(column: int) -> tuple[int, int, int]:
        col = [embedding.rows[r][column] for r in range(embedding.nrows)]
        lead = next(r for r, x in enumerate(col) if x)
        ij, a = divmod(lead, d)
        i, j = divmod(ij, 3)
        return i, j, a

    labels = []
    blocks: dict[tuple[int, int], list[int]] = {}
    for m in range(27):
        i, j, a = slot_of(m)
        key = (min(i, j) + 1, max(i, j) + 1)
        blocks.setdefault(key, []).append(m)
        if i == j:
            labels.append(f"e{i + 1}{i + 1}")
        else:
            labels.append(f"u{key[0]}{key[1]}_{a}")

    peirce = {}
    zero = field.zero()
    one = field.one()
    for key, members in sorted(blocks.items()):
        vectors = []
        for m in members:
            vec = [zero] * 27
            vec[m] = one
            vectors.append(vec)
        peirce[key] = Subspace(field, 27, vectors, canonical=True)

    fixed = Subspace(field, c3.dim, list(zip(*embedding.rows)), canonical=True)
    idempotents = []
    for i in range(3):
        vec = [zero] * c3.dim
        vec[(i * 3 + i) * d] = one
        coords = fixed.coords_of(vec)
        assert coords is not None, "diagonal idempotent escaped the fixed space"
        idempotents.append(tuple(coords))

    meta = AlbertMeta(
        gammas=raw_gammas,
        mus=tuple(field.coerce(m) for m in mus),
        coeff=coeff,
        coeff_conj=conj_map.matrix,
        embedding=embedding,
        idempotents=tuple(idempotents),
        peirce=peirce,
    )
    return AlgebraTable(
        field,
        27,
        {(i, j, k): v for i, j, k, v in sub.sc_items()},
        labels=tuple(labels),
        unit=sub.unit_coords(),
        meta=meta,
    )
