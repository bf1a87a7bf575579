"""One-sided DG modules over a nonpositive DG algebra.

Covers the data model and validators, strict morphisms, degree shift,
smart truncation, free modules on graded generator sets, cohomology with
its H^0(A)-module structure, and the conversion between right modules and
left modules over the opposite algebra.

Sign conventions (fixed once, validated by every d^2/Leibniz check):
  left Leibniz   d(a.m) = d(a).m + (-1)^{|a|} a.d(m)
  right Leibniz  d(m.a) = d(m).a + (-1)^{|m|} m.d(a)
  shift          M[k]^i = M^{i+k}, d_{M[k]} = (-1)^k d_M; the right action
                 is untwisted, the left action twists by (-1)^{k|a|}
"""
from __future__ import annotations

from dataclasses import dataclass

from .dgalgebra import DGAlgebra, StructureError, Violation, _first_mismatch, perm_matrix
from .field import Field
from .linalg import Matrix, QuotientSpace, kernel_basis, left_inverse, quotient, solve

LEFT = "left"
RIGHT = "right"


class DGModule:
    """A graded module over a DGAlgebra on a finite degree window."""

    __slots__ = ("side", "algebra", "window", "dims", "diff", "action")

    def __init__(self, side: str, algebra: DGAlgebra, window: tuple, dims: dict,
                 diff: dict, action: dict):
        if side not in (LEFT, RIGHT):
            raise StructureError(f"unknown side {side!r}")
        lo, hi = window
        if lo > hi:
            raise StructureError("empty degree window")
        self.side = side
        self.algebra = algebra
        self.window = (lo, hi)
        self.dims = {i: int(dims.get(i, 0)) for i in range(lo, hi + 1)}
        if any(d < 0 for d in self.dims.values()):
            raise StructureError("negative dimension")
        self.diff = dict(diff)
        self.action = dict(action)
        self._check_shapes()

    def _check_shapes(self):
        a = self.algebra
        for i, m in self.diff.items():
            if m.rows != self.dim(i + 1) or m.cols != self.dim(i):
                raise StructureError(f"module diff at degree {i}: {m.rows}x{m.cols}")
        for (i, j), m in self.action.items():
            want = (self.dim(i + j), self.dim(i) * a.dim(j))
            if (m.rows, m.cols) != want:
                raise StructureError(f"action at ({i},{j}): {m.rows}x{m.cols}, want {want}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def degrees(self):
        return range(self.window[0], self.window[1] + 1)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def top_degree(self):
        """Largest degree with a nonzero component, or None for the zero module."""
        for i in range(self.window[1], self.window[0] - 1, -1):
            if self.dim(i):
                return i
        return None

    def diff_map(self, i: int) -> Matrix:
        m = self.diff.get(i)
        if m is None:
            return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))
        return m

    def action_map(self, i: int, j: int) -> Matrix:
        """Bilinear action in degree (module i, algebra j).

        Right modules: source is M^i (x) A^j; left modules: A^j (x) M^i.
        """
        m = self.action.get((i, j))
        if m is None:
            return Matrix.zeros(self.field, self.dim(i + j), self.dim(i) * self.algebra.dim(j))
        return m

    def act(self, mvec, i, avec, j):
        """m.a (right) in M^{i+j}."""
        f = self.field
        if self.side == RIGHT:
            kron = [f.mul(x, y) for x in mvec for y in avec]
        else:
            kron = [f.mul(y, x) for y in avec for x in mvec]
        return self.action_map(i, j).apply(kron)

    def __eq__(self, other):
        if not isinstance(other, DGModule):
            return NotImplemented
        if (self.side != other.side or self.algebra != other.algebra
                or self.window != other.window or self.dims != other.dims):
            return False
        for i in self.degrees():
            if self.diff_map(i) != other.diff_map(i):
                return False
            for j in self.algebra.degrees():
                if self.action_map(i, j) != other.action_map(i, j):
                    return False
        return True

    def __repr__(self):
        dims = {i: d for i, d in self.dims.items() if d}
        return f"DGModule({self.side}, dims={dims})"


def validate_module(m: DGModule) -> list:
    """DG module axioms: d^2, Leibniz, associativity of the action, unit."""
    out = []
    a = m.algebra
    f = m.field
    for i in m.degrees():
        if not (m.diff_map(i + 1) @ m.diff_map(i)).is_zero():
            out.append(Violation("d_squared", {"degree": i}))
    for i in m.degrees():
        di = m.dim(i)
        if di == 0:
            continue
        im = Matrix.identity(f, di)
        for j in a.degrees():
            dj = a.dim(j)
            if dj == 0:
                continue
            ia = Matrix.identity(f, dj)
            act = m.action_map(i, j)
            if m.side == RIGHT:
                lhs = m.diff_map(i + j) @ act
                rhs = m.action_map(i + 1, j) @ m.diff_map(i).kron(ia)
                t2 = m.action_map(i, j + 1) @ im.kron(a.diff_map(j))
                rhs = rhs + (t2 if i % 2 == 0 else -t2)
                if lhs != rhs:
                    loc = _first_mismatch(lhs, rhs)
                    u, v = divmod(loc[1], dj)
                    out.append(Violation("leibniz", {"degrees": (i, j), "basis": (u, v)}))
            else:
                # stored source order is A^j (x) M^i
                lhs = m.diff_map(i + j) @ act
                rhs = m.action_map(i + 1, j) @ ia.kron(m.diff_map(i))
                rhs = rhs if j % 2 == 0 else -rhs
                t1 = m.action_map(i, j + 1) @ a.diff_map(j).kron(im)
                lhs2 = t1 + rhs
                if lhs != lhs2:
                    loc = _first_mismatch(lhs, lhs2)
                    u, v = divmod(loc[1], di)
                    out.append(Violation("leibniz", {"degrees": (j, i), "basis": (u, v)}))
            for k in a.degrees():
                dk = a.dim(k)
                if dk == 0:
                    continue
                ik = Matrix.identity(f, dk)
                if m.side == RIGHT:
                    l2 = m.action_map(i + j, k) @ act.kron(ik)
                    r2 = m.action_map(i, j + k) @ im.kron(a.mult_map(j, k))
                else:
                    # (a b).m = a.(b m): act over A^k then A^j on the outside
                    l2 = m.action_map(i, k + j) @ a.mult_map(k, j).kron(im)
                    r2 = m.action_map(i + j, k) @ ik.kron(act)
                if l2 != r2:
                    out.append(Violation("action_associativity", {"degrees": (i, j, k)}))
    unit = a.unit_column()
    for i in m.degrees():
        di = m.dim(i)
        if di == 0:
            continue
        im = Matrix.identity(f, di)
        if m.side == RIGHT:
            got = m.action_map(i, 0) @ im.kron(unit)
        else:
            got = m.action_map(i, 0) @ unit.kron(im)
        if got != im:
            out.append(Violation("unit_action", {"degree": i}))
    return out


# ---------------------------------------------------------------------------
# Strict morphisms


class StrictMorphism:
    """A degree-0, differential- and action-preserving module map."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: DGModule, target: DGModule, maps: dict):
        if source.side != target.side or source.algebra != target.algebra:
            raise StructureError("morphism endpoints incompatible")
        self.source = source
        self.target = target
        self.maps = dict(maps)
        for i, m in self.maps.items():
            if (m.rows, m.cols) != (target.dim(i), source.dim(i)):
                raise StructureError(f"morphism component at degree {i} has wrong shape")

    def map_at(self, i: int) -> Matrix:
        m = self.maps.get(i)
        if m is None:
            return Matrix.zeros(self.source.field, self.target.dim(i), self.source.dim(i))
        return m

    def apply(self, vec, i):
        return self.map_at(i).apply(vec)

    def __eq__(self, other):
        if not isinstance(other, StrictMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        degs = set(self.maps) | set(other.maps)
        return all(self.map_at(i) == other.map_at(i) for i in degs)

    @classmethod
    def identity(cls, m: DGModule) -> "StrictMorphism":
        return cls(m, m, {i: Matrix.identity(m.field, m.dim(i)) for i in m.degrees()})

    @classmethod
    def zero(cls, source: DGModule, target: DGModule) -> "StrictMorphism":
        return cls(source, target, {})

    def compose(self, first: "StrictMorphism") -> "StrictMorphism":
        """self o first."""
        if first.target != self.source:
            raise StructureError("composition mismatch")
        degs = set(first.maps) | set(self.maps)
        maps = {i: self.map_at(i) @ first.map_at(i) for i in degs}
        return StrictMorphism(first.source, self.target, maps)


def validate_morphism(fm: StrictMorphism) -> list:
    out = []
    src, tgt = fm.source, fm.target
    a = src.algebra
    f = src.field
    lo = min(src.window[0], tgt.window[0])
    hi = max(src.window[1], tgt.window[1])
    for i in range(lo, hi + 1):
        if fm.map_at(i + 1) @ src.diff_map(i) != tgt.diff_map(i) @ fm.map_at(i):
            out.append(Violation("chain_map", {"degree": i}))
        for j in a.degrees():
            if a.dim(j) == 0 or src.dim(i) == 0:
                continue
            ia = Matrix.identity(f, a.dim(j))
            if src.side == RIGHT:
                lhs = fm.map_at(i + j) @ src.action_map(i, j)
                rhs = tgt.action_map(i, j) @ fm.map_at(i).kron(ia)
            else:
                lhs = fm.map_at(i + j) @ src.action_map(i, j)
                rhs = tgt.action_map(i, j) @ ia.kron(fm.map_at(i))
            if lhs != rhs:
                out.append(Violation("equivariance", {"degrees": (i, j)}))
    return out


# ---------------------------------------------------------------------------
# Shift and truncation


def shift(m: DGModule, k: int) -> DGModule:
    """M[k] with M[k]^i = M^{i+k} and d' = (-1)^k d."""
    lo, hi = m.window
    f = m.field
    sign = f.one if k % 2 == 0 else f.neg(f.one)
    dims = {i - k: m.dim(i) for i in m.degrees()}
    diff = {i - k: m.diff_map(i).scale(sign) for i in m.degrees() if m.diff.get(i) is not None}
    action = {}
    for (i, j), mat in m.action.items():
        if m.side == LEFT and (k * j) % 2 == 1:
            mat = -mat
        action[(i - k, j)] = mat
    return DGModule(m.side, m.algebra, (lo - k, hi - k), dims, diff, action)


def shift_morphism(fm: StrictMorphism, k: int) -> StrictMorphism:
    return StrictMorphism(shift(fm.source, k), shift(fm.target, k),
                          {i - k: mat for i, mat in fm.maps.items()})


def smart_truncate(m: DGModule, j: int) -> DGModule:
    """Degrees < j unchanged, ker(d^j) at degree j, zero above.

    Preserves cohomology in degrees <= j and kills it above.
    """
    lo, hi = m.window
    if j >= hi:
        return m
    if j < lo:
        return DGModule(m.side, m.algebra, (j, j), {j: 0}, {}, {})
    f = m.field
    incl = kernel_basis(m.diff_map(j)).transpose()   # M^j <- ker
    z = incl.cols
    dims = {i: m.dim(i) for i in range(lo, j)}
    dims[j] = z
    diff = {}
    for i in range(lo, j):
        d = m.diff_map(i)
        if i + 1 == j:
            x = solve(incl, d)
            if x is None:
                raise StructureError("differential does not land in cocycles")
            diff[i] = x
        elif i + 1 < j:
            diff[i] = d
    action = {}
    a = m.algebra
    for i in list(dims):
        for ja in a.degrees():
            if a.dim(ja) == 0 or dims[i] == 0 or not (lo <= i + ja <= j):
                continue
            act = m.action_map(i, ja)
            if i == j:
                src = incl.kron(Matrix.identity(f, a.dim(ja))) if m.side == RIGHT \
                    else Matrix.identity(f, a.dim(ja)).kron(incl)
                act = act @ src
            if i + ja == j:
                restricted = solve(incl, act)
                if restricted is None:
                    raise StructureError("action does not preserve cocycles")
                act = restricted
            action[(i, ja)] = act
    return DGModule(m.side, m.algebra, (lo, j), dims, diff, action)


def _truncation_incl(m: DGModule, j: int):
    """Inclusion of the degree-j component of the truncation, or None for identity."""
    if j >= m.window[1]:
        return None
    return kernel_basis(m.diff_map(j)).transpose()


def truncate_morphism(fm: StrictMorphism, j: int) -> StrictMorphism:
    """The restriction of a strict morphism to the smart truncations at j."""
    src = smart_truncate(fm.source, j)
    tgt = smart_truncate(fm.target, j)
    s_in = _truncation_incl(fm.source, j)
    t_in = _truncation_incl(fm.target, j)
    maps = {}
    for i in range(min(src.window[0], tgt.window[0]), j + 1):
        fmat = fm.map_at(i)
        if i == j:
            if s_in is not None:
                fmat = fmat @ s_in
            if t_in is not None:
                fmat = solve(t_in, fmat)
                if fmat is None:
                    raise StructureError("morphism does not preserve cocycles")
        if fmat.rows and fmat.cols:
            maps[i] = fmat
    return StrictMorphism(src, tgt, maps)


# ---------------------------------------------------------------------------
# Direct sums and cones


def direct_sum(m1: DGModule, m2: DGModule) -> DGModule:
    if m1.side != m2.side or m1.algebra != m2.algebra:
        raise StructureError("direct sum endpoints incompatible")
    f = m1.field
    a = m1.algebra
    lo = min(m1.window[0], m2.window[0])
    hi = max(m1.window[1], m2.window[1])
    dims = {i: m1.dim(i) + m2.dim(i) for i in range(lo, hi + 1)}
    diff = {}
    for i in range(lo, hi + 1):
        d1, d2 = m1.diff_map(i), m2.diff_map(i)
        block = Matrix.zeros(f, dims.get(i + 1, 0), dims[i])
        for r in range(d1.rows):
            block.data[r][:d1.cols] = list(d1.data[r])
        for r in range(d2.rows):
            row = block.data[d1.rows + r]
            row[d1.cols:] = list(d2.data[r])
        diff[i] = block
    action = {}
    for i in range(lo, hi + 1):
        for j in a.degrees():
            dj = a.dim(j)
            if dj == 0 or dims[i] == 0 or not (lo <= i + j <= hi):
                continue
            a1, a2 = m1.action_map(i, j), m2.action_map(i, j)
            tgt1 = m1.dim(i + j)
            out = Matrix.zeros(f, dims[i + j], dims[i] * dj)
            if m1.side == RIGHT:
                for u in range(dims[i]):
                    for c in range(dj):
                        col = u * dj + c
                        if u < m1.dim(i):
                            src = a1.col(u * dj + c)
                            for r, v in enumerate(src):
                                out.data[r][col] = v
                        else:
                            src = a2.col((u - m1.dim(i)) * dj + c)
                            for r, v in enumerate(src):
                                out.data[tgt1 + r][col] = v
            else:
                for c in range(dj):
                    for u in range(dims[i]):
                        col = c * dims[i] + u
                        if u < m1.dim(i):
                            src = a1.col(c * m1.dim(i) + u)
                            for r, v in enumerate(src):
                                out.data[r][col] = v
                        else:
                            src = a2.col(c * m2.dim(i) + (u - m1.dim(i)))
                            for r, v in enumerate(src):
                                out.data[tgt1 + r][col] = v
            action[(i, j)] = out
    return DGModule(m1.side, a, (lo, hi), dims, diff, action)


def inclusion_morphisms(m1: DGModule, m2: DGModule, total: DGModule):
    f = m1.field
    inc1, inc2, pr1, pr2 = {}, {}, {}, {}
    for i in total.degrees():
        d1, d2 = m1.dim(i), m2.dim(i)
        a = Matrix.zeros(f, total.dim(i), d1)
        b = Matrix.zeros(f, total.dim(i), d2)
        for r in range(d1):
            a.data[r][r] = f.one
        for r in range(d2):
            b.data[d1 + r][r] = f.one
        inc1[i], inc2[i] = a, b
        pr1[i] = a.transpose()
        pr2[i] = b.transpose()
    return (StrictMorphism(m1, total, inc1), StrictMorphism(m2, total, inc2),
            StrictMorphism(total, m1, pr1), StrictMorphism(total, m2, pr2))


def mapping_cone(fm: StrictMorphism) -> DGModule:
    """cone(f) = target (+) source[1], d(n, m) = (d n + f m, -d m)."""
    shifted = shift(fm.source, 1)
    cone = direct_sum(fm.target, shifted)
    diff = dict(cone.diff)
    for i in cone.degrees():
        fmat = fm.map_at(i + 1)
        if fmat.rows == 0 or fmat.cols == 0:
            continue
        block = diff.get(i)
        if block is None or block.rows == 0:
            continue
        new = Matrix(cone.field, block.rows, block.cols,
                     [list(r) for r in block.data])
        off = fm.target.dim(i)
        f = cone.field
        for r in range(fmat.rows):
            for c in range(fmat.cols):
                new.data[r][off + c] = f.add(new.data[r][off + c], fmat.data[r][c])
        diff[i] = new
    return DGModule(cone.side, cone.algebra, cone.window, cone.dims, diff, cone.action)


# ---------------------------------------------------------------------------
# Opposite-algebra presentation of right modules


def right_to_op_left(m: DGModule, aop: DGAlgebra) -> DGModule:
    """Present a right A-module as a left A^op-module: a.m = (-1)^{|a||m|} m.a."""
    if m.side != RIGHT:
        raise StructureError("expected a right module")
    f = m.field
    action = {}
    for (i, j), mat in m.action.items():
        new = mat @ perm_matrix(f, m.algebra.dim(j), m.dim(i))
        if (i * j) % 2 == 1:
            new = -new
        action[(i, j)] = new
    return DGModule(LEFT, aop, m.window, dict(m.dims), dict(m.diff), action)


def op_left_to_right(m: DGModule, a: DGAlgebra) -> DGModule:
    """Inverse of right_to_op_left."""
    if m.side != LEFT:
        raise StructureError("expected a left module")
    f = m.field
    action = {}
    for (i, j), mat in m.action.items():
        new = mat @ perm_matrix(f, m.dim(i), m.algebra.dim(j))
        if (i * j) % 2 == 1:
            new = -new
        action[(i, j)] = new
    return DGModule(RIGHT, a, m.window, dict(m.dims), dict(m.diff), action)


# ---------------------------------------------------------------------------
# Free modules on graded generators


@dataclass(frozen=True)
class FreeLayout:
    """Basis bookkeeping for a free module on graded generators.

    In degree i the basis is the list of pairs (g, b) for generators g of
    degree e_g with dim A^{i-e_g} > 0 and b a basis index of A^{i-e_g},
    ordered by generator creation order, then b.
    """
    algebra: DGAlgebra
    gen_degrees: tuple

    def basis(self, i: int):
        out = []
        for g, e in enumerate(self.gen_degrees):
            d = self.algebra.dim(i - e)
            out.extend((g, b) for b in range(d))
        return out

    def dim(self, i: int) -> int:
        return sum(self.algebra.dim(i - e) for e in self.gen_degrees)

    def offset(self, i: int, g: int) -> int:
        off = 0
        for h in range(g):
            off += self.algebra.dim(i - self.gen_degrees[h])
        return off

    def window(self):
        if not self.gen_degrees:
            return (0, 0)
        return (min(self.gen_degrees) + self.algebra.min_degree, max(self.gen_degrees))


def free_module(algebra: DGAlgebra, side: str, gen_degrees, gen_diffs=None):
    """Free DG module on generators of the given degrees.

    `gen_diffs[g]` is the coordinate vector of d(g) in degree e_g + 1 of the
    layout (zero when omitted).  d^2 = 0 requires each d(g) to be a cocycle
    for the differential generated so far; callers guarantee that.
    Returns (module, layout).
    """
    f = algebra.field
    lay = FreeLayout(algebra, tuple(gen_degrees))
    lo, hi = lay.window()
    dims = {i: lay.dim(i) for i in range(lo, hi + 1)}
    gen_diffs = dict(enumerate(gen_diffs)) if gen_diffs is not None else {}

    action = {}
    for i in range(lo, hi + 1):
        for j in algebra.degrees():
            dj = algebra.dim(j)
            if dj == 0 or dims[i] == 0 or not (lo <= i + j <= hi):
                continue
            act = Matrix.zeros(f, dims[i + j], dims[i] * dj)
            for pos, (g, b) in enumerate(lay.basis(i)):
                e = lay.gen_degrees[g]
                off = lay.offset(i + j, g)
                for c in range(dj):
                    if side == RIGHT:
                        # (g.e_b).e_c = g.(e_b e_c)
                        col = pos * dj + c
                        src = algebra.mult_map(i - e, j).col(b * dj + c)
                    else:
                        # e_c.(e_b.g) = (e_c e_b).g
                        col = c * dims[i] + pos
                        src = algebra.mult_map(j, i - e).col(c * algebra.dim(i - e) + b)
                    for r, v in enumerate(src):
                        act.data[off + r][col] = v
            action[(i, j)] = act

    def right_mult(vec, t, avec, j):
        """(layout vector in degree t) . a for a in A^j."""
        out = [f.zero] * dims.get(t + j, 0)
        for pos, (g, b) in enumerate(lay.basis(t)):
            x = vec[pos]
            if x == f.zero:
                continue
            e = lay.gen_degrees[g]
            da = algebra.dim(t - e)
            kron = [f.zero] * (da * algebra.dim(j))
            base = b * algebra.dim(j)
            for c2, w in enumerate(avec):
                kron[base + c2] = w
            prod = algebra.mult_map(t - e, j).apply(kron)
            off = lay.offset(t + j, g)
            for r, v in enumerate(prod):
                if v != f.zero:
                    out[off + r] = f.add(out[off + r], f.mul(x, v))
        return out

    def left_mult(avec, j, vec, t):
        """a . (layout vector in degree t) for a in A^j."""
        out = [f.zero] * dims.get(t + j, 0)
        for pos, (g, b) in enumerate(lay.basis(t)):
            x = vec[pos]
            if x == f.zero:
                continue
            e = lay.gen_degrees[g]
            da = algebra.dim(t - e)
            kron = [f.zero] * (algebra.dim(j) * da)
            for c2, w in enumerate(avec):
                kron[c2 * da + b] = w
            prod = algebra.mult_map(j, t - e).apply(kron)
            off = lay.offset(t + j, g)
            for r, v in enumerate(prod):
                if v != f.zero:
                    out[off + r] = f.add(out[off + r], f.mul(x, v))
        return out

    diff = {}
    for i in range(lo, hi + 1):
        if dims[i] == 0:
            continue
        d = Matrix.zeros(f, dims.get(i + 1, 0), dims[i])
        for pos, (g, b) in enumerate(lay.basis(i)):
            e = lay.gen_degrees[g]
            col = [f.zero] * d.rows
            dg = gen_diffs.get(g)
            has_dg = dg is not None and any(x != f.zero for x in dg)
            ab = [f.one if t == b else f.zero for t in range(algebra.dim(i - e))]
            da = algebra.diff_map(i - e).col(b)
            off = lay.offset(i + 1, g)
            if side == RIGHT:
                # d(g.a) = d(g).a + (-1)^{|g|} g.d(a)
                if has_dg:
                    term = right_mult(dg, e + 1, ab, i - e)
                    col = [f.add(x, y) for x, y in zip(col, term)]
                for r, v in enumerate(da):
                    col[off + r] = f.add(col[off + r], v) if e % 2 == 0 \
                        else f.sub(col[off + r], v)
            else:
                # d(a.g) = d(a).g + (-1)^{|a|} a.d(g)
                for r, v in enumerate(da):
                    col[off + r] = f.add(col[off + r], v)
                if has_dg:
                    term = left_mult(ab, i - e, dg, e + 1)
                    if (i - e) % 2 == 0:
                        col = [f.add(x, y) for x, y in zip(col, term)]
                    else:
                        col = [f.sub(x, y) for x, y in zip(col, term)]
            for r, v in enumerate(col):
                d.data[r][pos] = v
        diff[i] = d
    mod = DGModule(side, algebra, (lo, hi), dims, diff, action)
    return mod, lay


# ---------------------------------------------------------------------------
# Cohomology


@dataclass(frozen=True)
class CohomologyModule:
    """H^i(M) with deterministic basis and its H^0(A)-module structure.

    `class_map` sends cocycle coordinates in M^i to class coordinates;
    `rep_map` sends class coordinates to cocycle representatives.
    """
    module: DGModule
    degree: int
    cocycle_incl: Matrix          # M^i <- Z^i
    space: QuotientSpace          # Z^i / im(d^{i-1})
    class_map: Matrix             # H <- M^i (valid on cocycles only)
    rep_map: Matrix               # M^i <- H
    h0_action: Matrix             # bilinear over H0(A), kron order per side

    @property
    def dim(self) -> int:
        return self.space.quotient_dim

    def class_of(self, zvec):
        """Class coordinates of a cocycle; raises on non-cocycles."""
        if self.module.diff_map(self.degree).apply(zvec) != \
                [self.module.field.zero] * self.module.dim(self.degree + 1):
            raise ValueError(f"not a cocycle in degree {self.degree}")
        return self.class_map.apply(zvec)

    def representative_of(self, hvec):
        return self.rep_map.apply(hvec)


def cohomology(m: DGModule, i: int) -> CohomologyModule:
    """H^i(M) = ker(d^i)/im(d^{i-1}) with its H^0(A) action."""
    f = m.field
    incl = kernel_basis(m.diff_map(i)).transpose()
    z = incl.cols
    img = solve(incl, m.diff_map(i - 1)) if z else Matrix.zeros(f, 0, m.dim(i - 1))
    if img is None:
        raise StructureError("d^2 != 0: image not inside cocycles")
    space = quotient(f, z, img.transpose())
    li = left_inverse(incl) if z else Matrix.zeros(f, 0, m.dim(i))
    class_map = space.projection @ li
    rep_map = incl @ space.section
    h0 = m.algebra.h0()
    h = space.quotient_dim
    q = h0.dim
    if m.side == RIGHT:
        act = Matrix.zeros(f, h, h * q)
        for v in range(h):
            rep = rep_map.col(v)
            for u in range(q):
                avec = h0.section.col(u)
                res = m.act(rep, i, avec, 0)
                cls = class_map.apply(res)
                for r in range(h):
                    act.data[r][v * q + u] = cls[r]
    else:
        act = Matrix.zeros(f, h, q * h)
        for u in range(q):
            avec = h0.section.col(u)
            for v in range(h):
                rep = rep_map.col(v)
                res = m.act(rep, i, avec, 0)
                cls = class_map.apply(res)
                for r in range(h):
                    act.data[r][u * h + v] = cls[r]
    return CohomologyModule(m, i, incl, space, class_map, rep_map, act)


def verify_h0_action(coh: CohomologyModule) -> list:
    """Well-definedness of the H0(A)-action on H^i: representative and lift independence."""
    out = []
    m = coh.module
    f = m.field
    a = m.algebra
    h0 = a.h0()
    i = coh.degree
    zero_h = [f.zero] * coh.dim
    # acting on a coboundary gives class zero
    for b in range(m.dim(i - 1)):
        w = m.diff_map(i - 1).col(b)
        for u in range(h0.dim):
            avec = h0.section.col(u)
            if coh.class_map.apply(m.act(w, i, avec, 0)) != zero_h:
                out.append(Violation("h0_action_rep_independence", {"coboundary": b, "ring_basis": u}))
    # elements of im(d_A^{-1}) act as zero
    for b in range(a.dim(-1)):
        im = a.diff_map(-1).col(b)
        for v in range(coh.dim):
            rep = coh.rep_map.col(v)
            if coh.class_map.apply(m.act(rep, i, im, 0)) != zero_h:
                out.append(Violation("h0_action_lift_independence", {"alg_basis": b, "class": v}))
    # unital
    h = coh.dim
    unit = Matrix.column(f, h0.ring.unit)
    eye = Matrix.identity(f, h)
    if m.side == RIGHT:
        got = coh.h0_action @ eye.kron(unit)
    else:
        got = coh.h0_action @ unit.kron(eye)
    if got != eye:
        out.append(Violation("h0_action_unital", {"degree": i}))
    return out
