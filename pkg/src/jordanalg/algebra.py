"""Structure-constant algebras and the operations the rest of the
package builds on: products, units, identity checks, ideals, quotients,
direct sums and split null extensions.

An AlgebraTable stores the multiplication of a finite-dimensional
algebra as structure constants c[i][j][k] (the coefficient of basis
vector k in the product b_i * b_j), kept sparse as nonzero rows.  The
commutative / associative / Jordan identity checks run on an integer
numpy image of the table so that 27-dimensional examples finish in
seconds; every numpy path reduces exactly (mod p, or on denominator-
cleared integers with an overflow guard and a Python-int fallback), so
no check ever rounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    AlgebraMismatch,
    BadParameters,
    FieldMismatch,
    NotAnIdeal,
    NotUnital,
)
from .fields import Field, RawScalar
from .linalg import Matrix, Subspace, solve_raw

_INT64_LIMIT = 1 << 62


@dataclass(frozen=True)
class SplitNullMeta:
    """How a split null extension was assembled: base dimension and the
    shift scalar reserved for extension derivations (it does not enter
    the product)."""

    base_dim: int
    shift: RawScalar


class AlgebraTable:
    """A finite-dimensional algebra given by structure constants.

    Equality compares field, dimension, structure constants and unit;
    labels and construction metadata are presentation-only and ignored.
    """

    __slots__ = ("field", "dim", "labels", "unit", "meta", "_rows", "_cache")

    def __init__(
        self,
        field: Field,
        dim: int,
        entries: Mapping[tuple[int, int, int], object],
        labels: Sequence[str] | None = None,
        unit: Sequence | None = None,
        meta: object = None,
    ):
        if dim <= 0:
            raise BadParameters("dimension must be positive")
        self.field = field
        self.dim = dim
        rows: dict[tuple[int, int], list[tuple[int, RawScalar]]] = {}
        for (i, j, k), value in entries.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise BadParameters(f"structure index ({i},{j},{k}) out of range")
            v = field.coerce(value)
            if not v:
                continue
            rows.setdefault((i, j), []).append((k, v))
        for key, pairs in rows.items():
            seen = set()
            for k, _ in pairs:
                if k in seen:
                    raise BadParameters(f"duplicate structure constant at {key + (k,)}")
                seen.add(k)
            pairs.sort()
        self._rows = {key: tuple(pairs) for key, pairs in rows.items()}
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != dim:
                raise BadParameters("label count differs from dimension")
            if len(set(labels)) != dim or any((not s) or any(ch.isspace() for ch in s) for s in labels):
                raise BadParameters("labels must be distinct non-empty tokens")
        self.labels = labels
        self.meta = meta
        self._cache: dict = {}
        if unit is not None:
            unit = tuple(field.coerce(x) for x in unit)
            if len(unit) != dim:
                raise BadParameters("unit length differs from dimension")
            if not self._acts_as_unit(unit):
                raise NotUnital("declared unit fails unit laws")
        self.unit = unit

    # ------------------------------------------------------------------
    # basics

    def sc_entry(self, i: int, j: int, k: int) -> RawScalar:
        for kk, v in self._rows.get((i, j), ()):
            if kk == k:
                return v
        return self.field.zero()

    def sc_items(self):
        """All nonzero structure constants, sorted by (i, j, k)."""
        for (i, j) in sorted(self._rows):
            for k, v in self._rows[(i, j)]:
                yield i, j, k, v

    def nonzero_count(self) -> int:
        return sum(len(pairs) for pairs in self._rows.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraTable)
            and self.field == other.field
            and self.dim == other.dim
            and self._rows == other._rows
            and self.unit == other.unit
        )

    __hash__ = None

    def __repr__(self) -> str:
        unital = "unital" if self.unit is not None else "no unit"
        return f"AlgebraTable(dim={self.dim}, {self.field}, {unital})"

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i + 1}"

    # ------------------------------------------------------------------
    # elements

    def element(self, coords: Sequence) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, [self.field.zero()] * self.dim)

    def basis_element(self, i: int) -> "Element":
        coords = [self.field.zero()] * self.dim
        coords[i] = self.field.one()
        return Element(self, coords)

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def one(self) -> "Element":
        u = self.unit_coords()
        if u is None:
            raise NotUnital("algebra has no unit")
        return Element(self, u)

    def unit_coords(self) -> tuple | None:
        if self.unit is not None:
            return self.unit
        if "unit" not in self._cache:
            found = _solve_for_unit(self)
            self._cache["unit"] = found
        return self._cache["unit"]

    def is_unital(self) -> bool:
        return self.unit_coords() is not None

    def _acts_as_unit(self, coords) -> bool:
        for j in range(self.dim):
            basis = [self.field.zero()] * self.dim
            basis[j] = self.field.one()
            if self.mul_coords(coords, basis) != basis:
                return False
            if self.mul_coords(basis, coords) != basis:
                return False
        return True

    # ------------------------------------------------------------------
    # multiplication

    def mul_coords(self, x: Sequence[RawScalar], y: Sequence[RawScalar]) -> list:
        f = self.field
        out = [f.zero()] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = self._rows.get((i, j))
                if row:
                    c = f.mul(xi, yj)
                    for k, v in row:
                        out[k] = f.add(out[k], f.mul(c, v))
        return out

    # ------------------------------------------------------------------
    # integer image for the numpy engines

    def structure_int_tensor(self) -> tuple[np.ndarray, int]:
        """The table as an integer numpy tensor C[i, j, k], with the
        denominator scale that was multiplied in (1 over GF(p)).

        GF(p) tables come back as residues; rational tables are cleared
        to integers by the lcm of all denominators.  dtype is int64 when
        the entries fit, otherwise object (exact Python ints).
        """
        cached = self._cache.get("int_tensor")
        if cached is not None:
            return cached
        n = self.dim
        if self.field.is_rational:
            scale = 1
            for pairs in self._rows.values():
                for _, v in pairs:
                    scale = scale * v.denominator // math.gcd(scale, v.denominator)
            ints = {}
            big = 0
            for (i, j), pairs in self._rows.items():
                for k, v in pairs:
                    w = int(v * scale)
                    ints[(i, j, k)] = w
                    big = max(big, abs(w))
            dtype = np.int64 if big < _INT64_LIMIT else object
            c = np.zeros((n, n, n), dtype=dtype)
            for (i, j, k), w in ints.items():
                c[i, j, k] = w
        else:
            scale = 1
            c = np.zeros((n, n, n), dtype=np.int64)
            for (i, j), pairs in self._rows.items():
                for k, v in pairs:
                    c[i, j, k] = v
        self._cache["int_tensor"] = (c, scale)
        return c, scale


class Element:
    """A vector in an algebra's basis, with product and module syntax."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: AlgebraTable, coords: Sequence):
        f = algebra.field
        coords = tuple(f.coerce(x) for x in coords)
        if len(coords) != algebra.dim:
            raise BadParameters("coordinate length differs from algebra dimension")
        self.algebra = algebra
        self.coords = coords

    def _same_algebra(self, other: "Element"):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same_algebra(other)
        f = self.algebra.field
        return Element(self.algebra, [f.add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        self._same_algebra(other)
        f = self.algebra.field
        return Element(self.algebra, [f.sub(a, b) for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        f = self.algebra.field
        return Element(self.algebra, [f.neg(a) for a in self.coords])

    def scale(self, c) -> "Element":
        f = self.algebra.field
        c = f.coerce(c)
        return Element(self.algebra, [f.mul(c, a) for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            self._same_algebra(other)
            return Element(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and (self.algebra is other.algebra or self.algebra == other.algebra)
            and self.coords == other.coords
        )

    def __bool__(self) -> bool:
        return any(self.coords)

    def __repr__(self) -> str:
        f = self.algebra.field
        parts = []
        for i, c in enumerate(self.coords):
            if c:
                parts.append(f"{f.format_raw(c)}*{self.algebra.label_of(i)}")
        return " + ".join(parts) if parts else "0"

    def square(self) -> "Element":
        return self * self

    def is_zero(self) -> bool:
        return not any(self.coords)


class LinearMap:
    """A linear endomorphism of an algebra's underlying space.

    Column j of the matrix is the image of basis vector j.
    """

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: AlgebraTable, matrix: Matrix):
        if matrix.field != algebra.field:
            raise FieldMismatch("map field differs from algebra field")
        if matrix.nrows != algebra.dim or matrix.ncols != algebra.dim:
            raise BadParameters("map shape differs from algebra dimension")
        self.algebra = algebra
        self.matrix = matrix

    @classmethod
    def from_images(cls, algebra: AlgebraTable, images: Sequence[Sequence]) -> "LinearMap":
        """Build from the list of basis-vector images (image of basis j
        at position j)."""
        cols = [[algebra.field.coerce(x) for x in img] for img in images]
        if len(cols) != algebra.dim:
            raise BadParameters("need one image per basis vector")
        return cls(algebra, Matrix(algebra.field, list(zip(*cols))))

    @classmethod
    def zero(cls, algebra: AlgebraTable) -> "LinearMap":
        return cls(algebra, Matrix.zeros(algebra.field, algebra.dim, algebra.dim))

    @classmethod
    def identity(cls, algebra: AlgebraTable) -> "LinearMap":
        return cls(algebra, Matrix.identity(algebra.field, algebra.dim))

    @classmethod
    def scalar(cls, algebra: AlgebraTable, c) -> "LinearMap":
        return cls(algebra, Matrix.identity(algebra.field, algebra.dim).scale(c))

    def apply(self, x: Element) -> Element:
        if x.algebra is not self.algebra and x.algebra != self.algebra:
            raise AlgebraMismatch("element lives in a different algebra")
        return Element(self.algebra, self.matrix.apply(x.coords))

    __call__ = apply

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, self.matrix @ other.matrix)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, self.matrix - other.matrix)

    def scale(self, c) -> "LinearMap":
        return LinearMap(self.algebra, self.matrix.scale(c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearMap)
            and self.algebra == other.algebra
            and self.matrix == other.matrix
        )

    def __repr__(self) -> str:
        return f"LinearMap(dim={self.algebra.dim}, {self.algebra.field})"

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def kernel(self) -> Subspace:
        return self.matrix.nullspace()

    def image(self) -> Subspace:
        return self.matrix.column_space()

    def restricts_to(self, space: Subspace) -> bool:
        """Whether the map sends the given subspace into itself."""
        return all(space.contains_vector(self.matrix.apply(v)) for v in space.basis)


# ---------------------------------------------------------------------------
# unit finding


def _solve_for_unit(table: AlgebraTable) -> tuple | None:
    f = table.field
    n = table.dim
    zero = f.zero()
    left = {}
    right = {}
    for (i, j), pairs in table._rows.items():
        for k, v in pairs:
            left.setdefault((j, k), [zero] * n)[i] = v
            right.setdefault((i, k), [zero] * n)[j] = v
    rows = []
    seen = set()
    for eqs in (left, right):
        for j in range(n):
            for k in range(n):
                row = eqs.get((j, k), [zero] * n)
                rhs = f.one() if j == k else zero
                key = tuple(row) + (rhs,)
                if key not in seen:
                    seen.add(key)
                    rows.append((list(row), rhs))
    mat = [r for r, _ in rows]
    rhs = [b for _, b in rows]
    sol = solve_raw(f, mat, rhs)
    if sol is None:
        return None
    return tuple(sol)


def find_unit(table: AlgebraTable) -> Element | None:
    """The two-sided unit of the table, if one exists."""
    coords = table.unit_coords()
    return None if coords is None else Element(table, coords)


# ---------------------------------------------------------------------------
# identity checks


def _check_commutative(table: AlgebraTable) -> bool:
    for (i, j), pairs in table._rows.items():
        if i == j:
            continue
        if table._rows.get((j, i), ()) != pairs:
            return False
    return True


def _engine_params(table: AlgebraTable):
    c, _ = table.structure_int_tensor()
    p = None if table.field.is_rational else table.field.p
    return c, p


def _check_associative(table: AlgebraTable) -> bool:
    c, p = _engine_params(table)
    n = table.dim
    if c.dtype == object:
        cap = None
    else:
        big = int(np.abs(c).max()) if c.size else 0
        if p is not None:
            big = p - 1
        if n * big * big >= _INT64_LIMIT:
            c = c.astype(object)
    chunk = max(1, min(n, (8 << 20) // max(1, 8 * n * n * n)))
    for lo in range(0, n, chunk):
        part = np.einsum("ijm,mkl->ijkl", c[lo : lo + chunk], c)
        part = part - np.einsum("jkm,iml->ijkl", c, c[lo : lo + chunk])
        if p is not None:
            part = part % p
        if np.any(part):
            return False
    return True


def _check_jordan(table: AlgebraTable) -> bool:
    """Fully multilinearized Jordan identity on all basis triples.

    For a commutative table the six-permutation linearization of
    (x^2 y) x - x^2 (y x) collapses to the operator statement
    [L_{ab}, L_c] + [L_{bc}, L_a] + [L_{ca}, L_b] = 0 on basis triples
    (a, b, c), up to the factor -2, which is invertible in every
    supported field.  That operator sum is what gets evaluated here.
    """
    if not check_identity(table, "commutative"):
        return False
    c, p = _engine_params(table)
    n = table.dim
    if c.dtype != object:
        big = int(np.abs(c).max()) if c.size else 0
        if p is not None:
            big = p - 1
        # two chained contractions and a six-term sum over length-n axes
        if 6 * n * n * big ** 3 >= _INT64_LIMIT:
            c = c.astype(object)
    t = c.transpose(0, 2, 1)  # t[i] is the left-multiplication matrix of basis i
    u = np.einsum("ijm,mab->ijab", c, t)
    if p is not None:
        u = u % p
    for k in range(n):
        tk = t[k]
        v = u[:, k]
        term = np.einsum("ijab,bc->ijac", u, tk)
        term = term - np.einsum("ab,ijbc->ijac", tk, u)
        term = term + np.einsum("jab,ibc->ijac", v, t)
        term = term - np.einsum("iab,jbc->ijac", t, v)
        term = term + np.einsum("iab,jbc->ijac", v, t)
        term = term - np.einsum("jab,ibc->ijac", t, v)
        if p is not None:
            term = term % p
        if np.any(term):
            return False
    return True


_IDENTITY_CHECKS = {
    "commutative": _check_commutative,
    "associative": _check_associative,
    "jordan": _check_jordan,
}


def check_identity(table: AlgebraTable, which: str) -> bool:
    """Exact verdict for 'commutative', 'associative' or 'jordan'."""
    if which not in _IDENTITY_CHECKS:
        raise BadParameters(f"unknown identity {which!r}")
    key = ("identity", which)
    if key not in table._cache:
        table._cache[key] = _IDENTITY_CHECKS[which](table)
    return table._cache[key]


def associator(x: Element, y: Element, z: Element) -> Element:
    """(xy)z - x(yz)."""
    return (x * y) * z - x * (y * z)


# ---------------------------------------------------------------------------
# ideals and quotients


def _products_into(table: AlgebraTable, vec, out: list):
    """Append all basis-element products b_i * v and v * b_i to out."""
    n = table.dim
    f = table.field
    zero = f.zero()
    for i in range(n):
        basis = [zero] * n
        basis[i] = f.one()
        out.append(table.mul_coords(basis, vec))
        out.append(table.mul_coords(vec, basis))


def is_ideal(table: AlgebraTable, space: Subspace) -> bool:
    """Whether the subspace is a two-sided ideal of the table."""
    if space.ambient != table.dim:
        raise BadParameters("subspace ambient differs from algebra dimension")
    products: list = []
    for vec in space.basis:
        _products_into(table, list(vec), products)
    return all(space.contains_vector(pr) for pr in products)


def ideal_closure(table: AlgebraTable, space: Subspace) -> Subspace:
    """Smallest ideal containing the subspace (iterated closure)."""
    if space.ambient != table.dim:
        raise BadParameters("subspace ambient differs from algebra dimension")
    current = space
    while True:
        products: list = []
        for vec in current.basis:
            _products_into(table, list(vec), products)
        grown = current.sum_with(Subspace(table.field, table.dim, products))
        if grown.dim == current.dim:
            return grown
        current = grown


def _product_space(table: AlgebraTable, a: Subspace, b: Subspace) -> Subspace:
    products = [table.mul_coords(list(u), list(v)) for u in a.basis for v in b.basis]
    return Subspace(table.field, table.dim, products)


def ideal_cube(table: AlgebraTable, ideal: Subspace) -> Subspace:
    """(I*I)*I for an ideal I; the result is again an ideal, which is
    re-verified here rather than trusted."""
    if not is_ideal(table, ideal):
        raise NotAnIdeal("ideal_cube requires an ideal")
    square = _product_space(table, ideal, ideal)
    cube = _product_space(table, square, ideal)
    assert is_ideal(table, cube), "cube of an ideal stopped being an ideal"
    return cube


def quotient_algebra(table: AlgebraTable, ideal: Subspace) -> tuple[AlgebraTable, Matrix]:
    """Quotient by an ideal plus the projection matrix onto it.

    The quotient basis is the set of standard basis vectors at the
    non-pivot columns of the ideal's echelon basis, in increasing
    order; the projection sends a coordinate vector to its quotient
    coordinates.  The projection matrix is (quotient dim) x (dim).
    """
    if not is_ideal(table, ideal):
        raise NotAnIdeal("quotient requires an ideal")
    f = table.field
    n = table.dim
    pivots = [next(i for i, x in enumerate(row) if x) for row in ideal.basis]
    pivot_set = set(pivots)
    complement = [m for m in range(n) if m not in pivot_set]
    q = len(complement)

    def project(vec) -> list:
        reduced = ideal.reduce_vector(vec)
        return [reduced[m] for m in complement]

    entries = {}
    zero = f.zero()
    for a, ia in enumerate(complement):
        for b, ib in enumerate(complement):
            x = [zero] * n
            y = [zero] * n
            x[ia] = f.one()
            y[ib] = f.one()
            image = project(table.mul_coords(x, y))
            for k, v in enumerate(image):
                if v:
                    entries[(a, b, k)] = v
    if q == 0:
        raise NotAnIdeal("quotient by the whole algebra is empty")
    labels = tuple(table.labels[m] for m in complement) if table.labels else None
    unit_coords = table.unit_coords()
    unit = project(list(unit_coords)) if unit_coords is not None else None
    quotient = AlgebraTable(f, q, entries, labels=labels, unit=unit)
    proj_rows = []
    for m in range(n):
        basis = [zero] * n
        basis[m] = f.one()
        proj_rows.append(project(basis))
    projection = Matrix(f, list(zip(*proj_rows)))
    return quotient, projection


# ---------------------------------------------------------------------------
# sums and extensions


def direct_sum(a: AlgebraTable, b: AlgebraTable) -> AlgebraTable:
    """Product algebra on the concatenated bases (no cross terms)."""
    if a.field != b.field:
        raise FieldMismatch("direct sum needs a common field")
    n = a.dim
    entries = {}
    for i, j, k, v in a.sc_items():
        entries[(i, j, k)] = v
    for i, j, k, v in b.sc_items():
        entries[(i + n, j + n, k + n)] = v
    labels = None
    if a.labels and b.labels and len(set(a.labels) | set(b.labels)) == a.dim + b.dim:
        labels = a.labels + b.labels
    unit = None
    ua, ub = a.unit_coords(), b.unit_coords()
    if ua is not None and ub is not None:
        unit = tuple(ua) + tuple(ub)
    return AlgebraTable(a.field, a.dim + b.dim, entries, labels=labels, unit=unit)


def split_null_extension(table: AlgebraTable, shift=0) -> tuple[AlgebraTable, Subspace]:
    """The square-zero extension on J + J*eps.

    The product is (a + b eps)(a' + b' eps) = aa' + (ab' + a'b) eps, so
    the eps copy is an ideal that squares to zero; it is returned as
    the radical subspace.  The shift scalar is carried in the metadata
    for the extension-derivation experiment and does not affect the
    product.
    """
    f = table.field
    n = table.dim
    entries = {}
    for i, j, k, v in table.sc_items():
        entries[(i, j, k)] = v
        entries[(i, j + n, k + n)] = v
        entries[(i + n, j, k + n)] = v
    labels = None
    if table.labels:
        labels = table.labels + tuple(f"{s}_eps" for s in table.labels)
    unit = None
    if table.unit_coords() is not None:
        unit = tuple(table.unit_coords()) + (f.zero(),) * n
    meta = SplitNullMeta(base_dim=n, shift=f.coerce(shift))
    ext = AlgebraTable(f, 2 * n, entries, labels=labels, unit=unit, meta=meta)
    zero = f.zero()
    one = f.one()
    radical_vectors = []
    for k in range(n):
        vec = [zero] * (2 * n)
        vec[n + k] = one
        radical_vectors.append(vec)
    radical = Subspace(f, 2 * n, radical_vectors, canonical=True)
    square = _product_space(ext, radical, radical)
    assert square.dim == 0, "radical of a split null extension must square to zero"
    return ext, radical


# ---------------------------------------------------------------------------
# inverses and the division-algebra scan


def _invert_jordan_coords(table: AlgebraTable, coords) -> list | None:
    """Solve x*y = 1 and x^2*y = x simultaneously, then re-verify."""
    f = table.field
    n = table.dim
    unit = table.unit_coords()
    if unit is None:
        raise NotUnital("inversion needs a unit")
    x = list(coords)
    xsq = table.mul_coords(x, x)
    zero = f.zero()
    lx = []
    lxsq = []
    for j in range(n):
        basis = [zero] * n
        basis[j] = f.one()
        lx.append(table.mul_coords(x, basis))
        lxsq.append(table.mul_coords(xsq, basis))
    rows = [[lx[j][k] for j in range(n)] for k in range(n)]
    rows += [[lxsq[j][k] for j in range(n)] for k in range(n)]
    rhs = list(unit) + x
    sol = solve_raw(f, rows, rhs)
    if sol is None:
        return None
    if table.mul_coords(x, sol) != list(unit):
        return None
    if table.mul_coords(xsq, sol) != x:
        return None
    return sol


def _invert_associative_coords(table: AlgebraTable, coords) -> list | None:
    """Right inverse via L_x, which is two-sided in a finite-dimensional
    associative unital algebra; both sides are still re-verified."""
    f = table.field
    n = table.dim
    unit = table.unit_coords()
    if unit is None:
        raise NotUnital("inversion needs a unit")
    zero = f.zero()
    x = list(coords)
    lx = []
    for j in range(n):
        basis = [zero] * n
        basis[j] = f.one()
        lx.append(table.mul_coords(x, basis))
    rows = [[lx[j][k] for j in range(n)] for k in range(n)]
    sol = solve_raw(f, rows, list(unit))
    if sol is None:
        return None
    if table.mul_coords(x, sol) != list(unit) or table.mul_coords(sol, x) != list(unit):
        return None
    return sol


def invert_element(x: Element) -> Element | None:
    """Inverse of x in its algebra, or None.

    Jordan-style inversion (x y = 1 and x^2 y = x) on commutative
    tables, plain one-sided solving on associative ones, and the
    two-sided requirement for a general table.
    """
    table = x.algebra
    if check_identity(table, "commutative"):
        sol = _invert_jordan_coords(table, x.coords)
    elif check_identity(table, "associative"):
        sol = _invert_associative_coords(table, x.coords)
    else:
        sol = _invert_generic_coords(table, x.coords)
    return None if sol is None else Element(table, sol)


def _invert_generic_coords(table: AlgebraTable, coords) -> list | None:
    f = table.field
    n = table.dim
    unit = table.unit_coords()
    if unit is None:
        raise NotUnital("inversion needs a unit")
    zero = f.zero()
    x = list(coords)
    lx = []
    rx = []
    for j in range(n):
        basis = [zero] * n
        basis[j] = f.one()
        lx.append(table.mul_coords(x, basis))
        rx.append(table.mul_coords(basis, x))
    left = solve_raw(f, [[lx[j][k] for j in range(n)] for k in range(n)], list(unit))
    right = solve_raw(f, [[rx[j][k] for j in range(n)] for k in range(n)], list(unit))
    if left is None or right is None or left != right:
        return None
    if table.mul_coords(x, left) != list(unit) or table.mul_coords(left, x) != list(unit):
        return None
    return left


def is_division_algebra(table: AlgebraTable, cap: int = 10**6) -> str:
    """'yes' / 'no' / 'unknown': are all nonzero elements invertible?

    Exhaustive over GF(p) when p^dim stays under the cap; anything
    larger (and every rational table) is 'unknown'.
    """
    if table.unit_coords() is None:
        raise NotUnital("division-algebra scan needs a unit")
    if table.field.is_rational:
        return "unknown"
    p = table.field.p
    if p**table.dim > cap:
        return "unknown"
    commutative = check_identity(table, "commutative")
    associative = check_identity(table, "associative")
    for tup in itertools.product(range(p), repeat=table.dim):
        if not any(tup):
            continue
        if commutative:
            ok = _invert_jordan_coords(table, list(tup)) is not None
        elif associative:
            ok = _invert_associative_coords(table, list(tup)) is not None
        else:
            ok = _invert_generic_coords(table, list(tup)) is not None
        if not ok:
            return "no"
    return "yes"
