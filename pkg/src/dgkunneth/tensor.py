"""Tensor products of DG modules.

Three layers:
  * `RingModule` / `BalancedTensorSpace`: balanced tensor products of ordinary
    (one-degree) modules over an ordinary ring, presented as quotients of the
    plain tensor product by the balancing relations (x.r) (x) y - x (x) (r.y).
  * `TensorComplex`: M (x)_A N for a right module M and a left module N, as a
    DG k-module with per-degree quotient presentations, lazily materialized.
  * degree-level maps: the bijection M^0 (x)_{A^0} N^0 -> (M (x)_A N)^0 and
    the map phi = (d_M (x) id) (+) (id (x) d_N) feeding the verification layer.

Bases are deterministic: ambient bigraded bases are ordered block-major by
the left degree (ascending), then left index, then right index; quotient
bases come from the pivot rule in `linalg.quotient`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .checks import DescentError
from .dgalgebra import DGAlgebra, StructureError, degree_zero_ring
from .dgmodule import LEFT, RIGHT, CohomologyModule, DGModule
from .field import Field
from .linalg import (
    Matrix,
    QuotientSpace,
    drop_zero_rows,
    hstack,
    kernel_basis,
    left_inverse,
    quotient,
    solve,
)


# ---------------------------------------------------------------------------
# Ordinary modules over an ordinary ring, and balanced tensors


@dataclass(frozen=True)
class RingModule:
    """A finite-dimensional one-sided module over a degree-0 algebra."""
    ring: DGAlgebra
    side: str
    dim: int
    action: Matrix   # right: (dim, dim * r); left: (dim, r * dim)

    def __post_init__(self):
        r = self.ring.dim(0)
        if self.action.rows != self.dim or self.action.cols != self.dim * r:
            raise StructureError("ring module action has wrong shape")

    def act(self, vec, rvec):
        f = self.ring.field
        if self.side == RIGHT:
            kron = [f.mul(x, y) for x in vec for y in rvec]
        else:
            kron = [f.mul(y, x) for y in rvec for x in vec]
        return self.action.apply(kron)


def module_degree_ring_module(m: DGModule, i: int) -> RingModule:
    """M^i as a module over A^0."""
    return RingModule(degree_zero_ring(m.algebra), m.side, m.dim(i), m.action_map(i, 0))


def cohomology_ring_module(coh: CohomologyModule) -> RingModule:
    """H^i(M) as a module over H^0(A)."""
    return RingModule(coh.module.algebra.h0().ring, coh.module.side,
                      coh.dim, coh.h0_action)


def restrict_ring_module(rm: RingModule, ringmap: Matrix, new_ring: DGAlgebra) -> RingModule:
    """Pull back along a ring map new_ring -> rm.ring given by `ringmap`."""
    f = rm.ring.field
    eye = Matrix.identity(f, rm.dim)
    if rm.side == RIGHT:
        action = rm.action @ eye.kron(ringmap)
    else:
        action = rm.action @ ringmap.kron(eye)
    return RingModule(new_ring, rm.side, rm.dim, action)


def cohomology_over_degree_zero(coh: CohomologyModule) -> RingModule:
    """H^i(M) as an A^0-module via A^0 ->> H^0(A)."""
    h0 = coh.module.algebra.h0()
    return restrict_ring_module(cohomology_ring_module(coh), h0.projection,
                                degree_zero_ring(coh.module.algebra))


@dataclass(frozen=True)
class BalancedTensorSpace:
    """x (x)_R y for a right module x and a left module y over R."""
    ring: DGAlgebra
    xmod: RingModule
    ymod: RingModule
    space: QuotientSpace

    @property
    def dim(self) -> int:
        return self.space.quotient_dim

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    def project_pair(self, xvec, yvec):
        f = self.ring.field
        amb = [f.mul(a, b) for a in xvec for b in yvec]
        return self.space.project(amb)


def balanced_tensor(x: RingModule, y: RingModule) -> BalancedTensorSpace:
    if x.ring != y.ring:
        raise StructureError("balanced tensor over different rings")
    if x.side != RIGHT or y.side != LEFT:
        raise StructureError("balanced tensor needs (right, left) modules")
    f = x.ring.field
    dx, dy, dr = x.dim, y.dim, x.ring.dim(0)
    rows = []
    for c in range(dr):
        for u in range(dx):
            xr = x.action.col(u * dr + c)
            for v in range(dy):
                row = [f.zero] * (dx * dy)
                for w, val in enumerate(xr):
                    row[w * dy + v] = val
                ry = y.action.col(c * dy + v)
                for w, val in enumerate(ry):
                    row[u * dy + w] = f.sub(row[u * dy + w], val)
                rows.append(row)
    rel = drop_zero_rows(Matrix(f, len(rows), dx * dy, rows)) if rows \
        else Matrix.zeros(f, 0, dx * dy)
    return BalancedTensorSpace(x.ring, x, y, quotient(f, dx * dy, rel))


def induced_balanced_map(src: BalancedTensorSpace, dst: BalancedTensorSpace,
                         fmat: Matrix, gmat: Matrix, check: bool = True) -> Matrix:
    """The map f (x) g between balanced tensor quotients.

    `fmat` and `gmat` must be equivariant; with `check` the relation span of
    the source is verified to map into the relation span of the target.
    """
    amb = fmat.kron(gmat)
    out = dst.space.projection @ amb @ src.space.section
    if check and src.space.relations.rows:
        img = dst.space.projection @ amb @ src.space.relations.transpose()
        if not img.is_zero():
            raise DescentError("induced map does not descend to the balanced quotient")
    return out


# ---------------------------------------------------------------------------
# The DG tensor complex M (x)_A N


class TensorComplex:
    """M (x)_A N with per-degree quotient presentations, built on demand.

    The differential is d(x (x) y) = d(x) (x) y + (-1)^{|x|} x (x) d(y),
    verified on construction to descend to each quotient.
    """

    def __init__(self, m: DGModule, n: DGModule):
        if m.side != RIGHT:
            raise StructureError("left factor must be a right module")
        if n.side != LEFT:
            raise StructureError("right factor must be a left module")
        if m.algebra != n.algebra:
            raise StructureError("tensor factors over different algebras")
        self.m = m
        self.n = n
        self.algebra = m.algebra
        self.field: Field = m.field
        self.lo = m.window[0] + n.window[0]
        self.hi = m.window[1] + n.window[1]
        self._spaces = {}
        self._rels = {}
        self._diffs = {}

    def blocks(self, t: int):
        """Bigraded blocks (p, q, offset, dim M^p, dim N^q) with p ascending."""
        out = []
        off = 0
        plo = max(self.m.window[0], t - self.n.window[1])
        phi = min(self.m.window[1], t - self.n.window[0])
        for p in range(plo, phi + 1):
            dmp, dnq = self.m.dim(p), self.n.dim(t - p)
            if dmp and dnq:
                out.append((p, t - p, off, dmp, dnq))
                off += dmp * dnq
        return out

    def ambient_dim(self, t: int) -> int:
        bl = self.blocks(t)
        if not bl:
            return 0
        p, q, off, dmp, dnq = bl[-1]
        return off + dmp * dnq

    def _block_offset(self, t: int, p: int):
        for bp, bq, off, dmp, dnq in self.blocks(t):
            if bp == p:
                return off, dmp, dnq
        return None

    def relations(self, t: int) -> Matrix:
        if t in self._rels:
            return self._rels[t]
        f = self.field
        amb = self.ambient_dim(t)
        offsets = {p: (off, dmp, dnq) for p, q, off, dmp, dnq in self.blocks(t)}
        rows = []
        a = self.algebra
        for j in a.degrees():
            dj = a.dim(j)
            if dj == 0:
                continue
            for p in self.m.degrees():
                dmp = self.m.dim(p)
                q = t - p - j
                dnq = self.n.dim(q)
                if dmp == 0 or dnq == 0:
                    continue
                act_m = self.m.action_map(p, j)           # M^p (x) A^j -> M^{p+j}
                act_n = self.n.action_map(q, j)           # A^j (x) N^q -> N^{q+j}
                left_block = offsets.get(p + j)
                right_block = offsets.get(p)
                for u in range(dmp):
                    for c in range(dj):
                        ma = act_m.col(u * dj + c)
                        for v in range(dnq):
                            row = [f.zero] * amb
                            if left_block is not None:
                                off, _, dn = left_block
                                for w, val in enumerate(ma):
                                    row[off + w * dn + v] = val
                            if right_block is not None:
                                off, _, dn = right_block
                                an = act_n.col(c * dnq + v)
                                for w, val in enumerate(an):
                                    row[off + u * dn + w] = f.sub(row[off + u * dn + w], val)
                            rows.append(row)
        rel = drop_zero_rows(Matrix(f, len(rows), amb, rows)) if rows \
            else Matrix.zeros(f, 0, amb)
        self._rels[t] = rel
        return rel

    def space(self, t: int) -> QuotientSpace:
        if t not in self._spaces:
            self._spaces[t] = quotient(self.field, self.ambient_dim(t), self.relations(t))
        return self._spaces[t]

    def dim(self, t: int) -> int:
        return self.space(t).quotient_dim

    def ambient_diff(self, t: int) -> Matrix:
        f = self.field
        out = Matrix.zeros(f, self.ambient_dim(t + 1), self.ambient_dim(t))
        tgt = {p: (off, dmp, dnq) for p, q, off, dmp, dnq in self.blocks(t + 1)}
        for p, q, off, dmp, dnq in self.blocks(t):
            dm = self.m.diff_map(p)
            up = tgt.get(p + 1)
            if up is not None and dm.rows:
                toff, _, dn = up
                for u in range(dmp):
                    col_m = dm.col(u)
                    for v in range(dnq):
                        src = off + u * dnq + v
                        for w, val in enumerate(col_m):
                            if val != f.zero:
                                out.data[toff + w * dn + v][src] = \
                                    f.add(out.data[toff + w * dn + v][src], val)
            dn_map = self.n.diff_map(q)
            same = tgt.get(p)
            if same is not None and dn_map.rows:
                toff, _, dn = same
                neg = p % 2 == 1
                for u in range(dmp):
                    for v in range(dnq):
                        src = off + u * dnq + v
                        col_n = dn_map.col(v)
                        for w, val in enumerate(col_n):
                            if val != f.zero:
                                cur = out.data[toff + u * dn + w][src]
                                out.data[toff + u * dn + w][src] = \
                                    f.sub(cur, val) if neg else f.add(cur, val)
        return out

    def diff(self, t: int) -> Matrix:
        if t in self._diffs:
            return self._diffs[t]
        amb = self.ambient_diff(t)
        sp, sp1 = self.space(t), self.space(t + 1)
        rel = self.space(t).relations
        if rel.rows:
            img = sp1.projection @ amb @ rel.transpose()
            if not img.is_zero():
                raise DescentError(f"tensor differential does not descend at degree {t}")
        d = sp1.projection @ amb @ sp.section
        self._diffs[t] = d
        return d

    def project_pair(self, xvec, p, yvec, q):
        """Quotient coordinates of x (x) y for x in M^p, y in N^q."""
        t = p + q
        f = self.field
        amb = [f.zero] * self.ambient_dim(t)
        blk = self._block_offset(t, p)
        if blk is not None:
            off, dmp, dnq = blk
            for u, a in enumerate(xvec):
                if a == f.zero:
                    continue
                for v, b in enumerate(yvec):
                    if b != f.zero:
                        amb[off + u * dnq + v] = f.mul(a, b)
        return self.space(t).project(amb)

    def embed_block(self, t: int, p: int, cols: int) -> Matrix:
        """Ambient embedding of the (p, t-p) block as a matrix."""
        f = self.field
        out = Matrix.zeros(f, self.ambient_dim(t), cols)
        blk = self._block_offset(t, p)
        if blk is not None:
            off, dmp, dnq = blk
            for c in range(min(cols, dmp * dnq)):
                out.data[off + c][c] = f.one
        return out


# ---------------------------------------------------------------------------
# k-linear cohomology of a presented complex degree


@dataclass(frozen=True)
class CohomologySpace:
    """H at one degree of a complex given by matrices d_in, d_out."""
    degree: int
    cocycle_incl: Matrix
    space: QuotientSpace
    class_map: Matrix
    rep_map: Matrix

    @property
    def dim(self) -> int:
        return self.space.quotient_dim


def space_cohomology(field: Field, degree: int, d_in: Matrix, d_out: Matrix) -> CohomologySpace:
    """ker(d_out)/im(d_in) with class and representative maps."""
    incl = kernel_basis(d_out).transpose()
    z = incl.cols
    img = solve(incl, d_in) if z else Matrix.zeros(field, 0, d_in.cols)
    if img is None:
        raise StructureError("image is not contained in the kernel (d^2 != 0)")
    sp = quotient(field, z, img.transpose())
    li = left_inverse(incl) if z else Matrix.zeros(field, 0, d_out.cols)
    return CohomologySpace(degree, incl, sp, sp.projection @ li, incl @ sp.section)


def tensor_cohomology(tc: TensorComplex, t: int) -> CohomologySpace:
    return space_cohomology(tc.field, t, tc.diff(t - 1), tc.diff(t))


# ---------------------------------------------------------------------------
# Spec-level operations


def tensor_over_algebra(m: DGModule, n: DGModule) -> TensorComplex:
    return TensorComplex(m, n)


def tensor_over_ring(x: RingModule, y: RingModule) -> BalancedTensorSpace:
    return balanced_tensor(x, y)


def degree0_iso_check(m: DGModule, n: DGModule):
    """Matrix and bijectivity evidence for M^0 (x)_{A^0} N^0 -> (M (x)_A N)^0.

    Requires windows bounded above by 0.  Returns (matrix, CheckResult).
    """
    from .checks import failed, passed
    if m.window[1] > 0 or n.window[1] > 0:
        raise StructureError("degree-0 comparison needs windows <= 0")
    bal = balanced_tensor(module_degree_ring_module(m, 0),
                          module_degree_ring_module(n, 0))
    tc = TensorComplex(m, n)
    sp = tc.space(0)
    # ambient spaces agree: the only block in degree 0 is (0, 0)
    mat = sp.projection @ bal.space.section
    from .linalg import rank
    ok = bal.dim == sp.quotient_dim and rank(mat) == bal.dim
    if ok:
        return mat, passed("degree0_obvious_map_bijective",
                           dim=bal.dim)
    return mat, failed("degree0_obvious_map_bijective",
                       counterexample={"balanced_dim": bal.dim,
                                       "tensor_dim": sp.quotient_dim})


def phi_summands(m: DGModule, n: DGModule):
    """(B1, B2, Mid, phi1, phi2) for phi: B1 (+) B2 -> Mid = M^0 (x)_{A^0} N^0."""
    b1 = balanced_tensor(module_degree_ring_module(m, -1),
                         module_degree_ring_module(n, 0))
    b2 = balanced_tensor(module_degree_ring_module(m, 0),
                         module_degree_ring_module(n, -1))
    mid = balanced_tensor(module_degree_ring_module(m, 0),
                          module_degree_ring_module(n, 0))
    f = m.field
    phi1 = induced_balanced_map(b1, mid, m.diff_map(-1), Matrix.identity(f, n.dim(0)))
    phi2 = induced_balanced_map(b2, mid, Matrix.identity(f, m.dim(0)), n.diff_map(-1))
    return b1, b2, mid, phi1, phi2


def phi_map(m: DGModule, n: DGModule) -> Matrix:
    """phi = (d_M (x) id) (+) (id (x) d_N) into M^0 (x)_{A^0} N^0."""
    if m.window[1] > 0 or n.window[1] > 0:
        raise StructureError("phi needs windows <= 0")
    b1, b2, mid, phi1, phi2 = phi_summands(m, n)
    return hstack([phi1, phi2])


def tensor_map(src: TensorComplex, dst: TensorComplex, fmaps, gmaps, t: int,
               check: bool = True) -> Matrix:
    """Quotient-level matrix of f (x) g at degree t.

    `fmaps(p)` and `gmaps(q)` return the degree components of strict
    morphisms m_src -> m_dst and n_src -> n_dst.  With `check`, relation
    rows of the source are verified to map into the target relation span.
    """
    f = src.field
    amb = Matrix.zeros(f, dst.ambient_dim(t), src.ambient_dim(t))
    tgt = {p: (off, dmp, dnq) for p, q, off, dmp, dnq in dst.blocks(t)}
    for p, q, off, dmp, dnq in src.blocks(t):
        blk = tgt.get(p)
        if blk is None:
            # target block has a zero factor, so f^p (x) g^q is empty
            continue
        toff, tdm, tdn = blk
        fm, gm = fmaps(p), gmaps(q)
        kr = fm.kron(gm)
        for r in range(kr.rows):
            row = amb.data[toff + r]
            src_row = kr.data[r]
            for c in range(kr.cols):
                v = src_row[c]
                if v != f.zero:
                    row[off + c] = f.add(row[off + c], v)
    sp, dp = src.space(t), dst.space(t)
    if check and sp.relations.rows:
        img = dp.projection @ amb @ sp.relations.transpose()
        if not img.is_zero():
            raise DescentError(f"tensor map does not descend at degree {t}")
    return dp.projection @ amb @ sp.section
