"""Nonpositive DG algebras: data model, axiom validation, degree-zero cohomology ring.

A DG algebra lives in degrees min_degree..0 with a degree +1 differential.
All structure maps follow the column convention of `linalg`: the product on
A^i x A^j is a matrix (dim A^{i+j}) x (dim A^i * dim A^j) acting on
Kronecker-ordered tensor coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import Field
from .linalg import Matrix, quotient, QuotientSpace


class StructureError(Exception):
    """Malformed input data (bad shapes, inconsistent dimensions)."""


@dataclass(frozen=True)
class Violation:
    """A failed axiom, with enough location data to reproduce it."""
    axiom: str
    where: dict = dc_field(default_factory=dict)

    def __str__(self):
        return f"{self.axiom} at {self.where}"


def _first_mismatch(lhs: Matrix, rhs: Matrix):
    for r in range(lhs.rows):
        for c in range(lhs.cols):
            if lhs.data[r][c] != rhs.data[r][c]:
                return r, c
    return None


class DGAlgebra:
    """A = (+) A^i for min_degree <= i <= 0, with product, unit, differential."""

    __slots__ = ("field", "min_degree", "dims", "mult", "diff", "unit", "_h0")

    def __init__(self, field: Field, min_degree: int, dims: dict, mult: dict,
                 diff: dict, unit: list):
        if min_degree > 0:
            raise StructureError("min_degree must be <= 0")
        self.field = field
        self.min_degree = min_degree
        self.dims = {i: int(dims.get(i, 0)) for i in range(min_degree, 1)}
        if any(d < 0 for d in self.dims.values()):
            raise StructureError("negative dimension")
        self.mult = dict(mult)
        self.diff = dict(diff)
        self.unit = list(unit)
        if len(self.unit) != self.dim(0):
            raise StructureError("unit vector has wrong length")
        self._check_shapes()
        self._h0 = None

    def _check_shapes(self):
        for i, m in self.diff.items():
            if m.rows != self.dim(i + 1) or m.cols != self.dim(i):
                raise StructureError(f"diff at degree {i} has shape {m.rows}x{m.cols}")
        for (i, j), m in self.mult.items():
            want_r, want_c = self.dim(i + j), self.dim(i) * self.dim(j)
            if m.rows != want_r or m.cols != want_c:
                raise StructureError(f"mult at ({i},{j}) has shape {m.rows}x{m.cols}, "
                                     f"want {want_r}x{want_c}")

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def degrees(self):
        return range(self.min_degree, 1)

    def diff_map(self, i: int) -> Matrix:
        m = self.diff.get(i)
        if m is None:
            return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))
        return m

    def mult_map(self, i: int, j: int) -> Matrix:
        m = self.mult.get((i, j))
        if m is None:
            return Matrix.zeros(self.field, self.dim(i + j), self.dim(i) * self.dim(j))
        return m

    def unit_column(self) -> Matrix:
        return Matrix.column(self.field, self.unit)

    def product(self, xvec, i, yvec, j):
        """Coordinates of x*y in A^{i+j}."""
        kron = [self.field.mul(a, b) for a in xvec for b in yvec]
        return self.mult_map(i, j).apply(kron)

    def __eq__(self, other):
        if not isinstance(other, DGAlgebra):
            return NotImplemented
        if (self.field != other.field or self.min_degree != other.min_degree
                or self.dims != other.dims or self.unit != other.unit):
            return False
        for i in self.degrees():
            if self.diff_map(i) != other.diff_map(i):
                return False
            for j in self.degrees():
                if self.mult_map(i, j) != other.mult_map(i, j):
                    return False
        return True

    def __hash__(self):
        return hash((self.field, self.min_degree, tuple(sorted(self.dims.items()))))

    def __repr__(self):
        dims = {i: d for i, d in self.dims.items() if d}
        return f"DGAlgebra({self.field!r}, dims={dims})"

    def h0(self) -> "H0Ring":
        if self._h0 is None:
            self._h0 = h0_ring(self)
        return self._h0


def validate_algebra(a: DGAlgebra) -> list:
    """Check d^2 = 0, Leibniz, associativity and the unit axioms.

    Returns a list of Violations; empty means the algebra is valid.
    """
    out = []
    f = a.field
    for i in a.degrees():
        lhs = a.diff_map(i + 1) @ a.diff_map(i)
        if not lhs.is_zero():
            out.append(Violation("d_squared", {"degree": i}))
    one = f.one
    for i in a.degrees():
        di, ii = a.dim(i), Matrix.identity(f, a.dim(i))
        if di == 0:
            continue
        for j in a.degrees():
            dj = a.dim(j)
            if dj == 0:
                continue
            ij = Matrix.identity(f, dj)
            lhs = a.diff_map(i + j) @ a.mult_map(i, j)
            rhs = a.mult_map(i + 1, j) @ a.diff_map(i).kron(ij)
            term2 = a.mult_map(i, j + 1) @ ii.kron(a.diff_map(j))
            rhs = rhs + (term2 if i % 2 == 0 else -term2)
            if lhs != rhs:
                loc = _first_mismatch(lhs, rhs)
                u, v = divmod(loc[1], dj)
                out.append(Violation("leibniz", {"degrees": (i, j), "basis": (u, v)}))
            for k in a.degrees():
                dk = a.dim(k)
                if dk == 0:
                    continue
                ik = Matrix.identity(f, dk)
                l2 = a.mult_map(i + j, k) @ a.mult_map(i, j).kron(ik)
                r2 = a.mult_map(i, j + k) @ ii.kron(a.mult_map(j, k))
                if l2 != r2:
                    loc = _first_mismatch(l2, r2)
                    uv, w = divmod(loc[1], dk)
                    u, v = divmod(uv, dj)
                    out.append(Violation("associativity", {"degrees": (i, j, k),
                                                           "basis": (u, v, w)}))
    unit = a.unit_column()
    for j in a.degrees():
        dj = a.dim(j)
        if dj == 0:
            continue
        ij = Matrix.identity(f, dj)
        if a.mult_map(0, j) @ unit.kron(ij) != ij:
            out.append(Violation("left_unit", {"degree": j}))
        if a.mult_map(j, 0) @ ij.kron(unit) != ij:
            out.append(Violation("right_unit", {"degree": j}))
    return out


@dataclass(frozen=True)
class H0Ring:
    """H^0(A) = A^0 / im(d^{-1}) as an ordinary ring, with its presentation."""
    source: DGAlgebra
    ring: DGAlgebra            # concentrated in degree 0
    space: QuotientSpace       # of A^0 by im(d^{-1})

    @property
    def projection(self) -> Matrix:
        return self.space.projection

    @property
    def section(self) -> Matrix:
        return self.space.section

    @property
    def dim(self) -> int:
        return self.space.quotient_dim


def h0_ring(a: DGAlgebra) -> H0Ring:
    """The degree-zero cohomology ring with projection/section to A^0."""
    f = a.field
    relations = a.diff_map(-1).transpose()
    space = quotient(f, a.dim(0), relations)
    proj, sec = space.projection, space.section
    mult = proj @ a.mult_map(0, 0) @ sec.kron(sec)
    unit = proj.apply(a.unit)
    ring = DGAlgebra(f, 0, {0: space.quotient_dim}, {(0, 0): mult}, {}, unit)
    # the projection must be multiplicative, else the input was not a DG algebra
    if proj @ a.mult_map(0, 0) != mult @ proj.kron(proj):
        raise StructureError("projection to H^0 is not multiplicative; input algebra invalid")
    return H0Ring(a, ring, space)


def degree_zero_ring(a: DGAlgebra) -> DGAlgebra:
    """A^0 as an ordinary ring (forgetting all other degrees)."""
    return DGAlgebra(a.field, 0, {0: a.dim(0)}, {(0, 0): a.mult_map(0, 0)}, {}, a.unit)


def opposite_algebra(a: DGAlgebra) -> DGAlgebra:
    """A^op: same underlying complex, product x *op y = (-1)^{|x||y|} y x."""
    f = a.field
    mult = {}
    for (i, j), _ in list(a.mult.items()):
        m = a.mult_map(j, i) @ perm_matrix(f, a.dim(i), a.dim(j))
        if (i * j) % 2 == 1:
            m = -m
        mult[(i, j)] = m
    return DGAlgebra(f, a.min_degree, dict(a.dims), mult, dict(a.diff), list(a.unit))


def perm_matrix(f: Field, d1: int, d2: int) -> Matrix:
    """The swap V1 (x) V2 -> V2 (x) V1 on Kronecker coordinates."""
    m = Matrix.zeros(f, d2 * d1, d1 * d2)
    for u in range(d1):
        for v in range(d2):
            m.data[v * d1 + u][u * d2 + v] = f.one
    return m
