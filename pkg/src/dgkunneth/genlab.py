"""Seeded generators for valid DG algebras, DG modules and strict morphisms.

Random DG algebras are never sampled from raw structure constants (which
would almost never satisfy associativity + Leibniz); instead every emitted
algebra comes from a small audited family list, and modules are built as
free modules with repaired differentials, then varied through shifts,
truncations, sums and mapping cones.  Everything emitted passes its
validator, and generation is deterministic per (seed, index).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .dgalgebra import DGAlgebra, StructureError, validate_algebra
from .dgmodule import (
    LEFT,
    RIGHT,
    DGModule,
    StrictMorphism,
    direct_sum,
    free_module,
    mapping_cone,
    shift,
    smart_truncate,
)
from .field import Field
from .linalg import Matrix, kernel_basis


class GenerationError(Exception):
    """Resampling budget exhausted; carries the seed context."""


# ---------------------------------------------------------------------------
# Algebra families


def make_ordinary(field: Field, structure_constants, unit=None) -> DGAlgebra:
    """Degree-0 algebra from a table: structure_constants[u][v] = coords of e_u e_v."""
    n = len(structure_constants)
    mult = Matrix.zeros(field, n, n * n)
    for u in range(n):
        if len(structure_constants[u]) != n:
            raise StructureError("structure constant table is not square")
        for v in range(n):
            coords = structure_constants[u][v]
            for r, x in enumerate(coords):
                mult.data[r][u * n + v] = field.of_int(x) if isinstance(x, int) else x
    if unit is None:
        unit = [field.one] + [field.zero] * (n - 1)
    a = DGAlgebra(field, 0, {0: n}, {(0, 0): mult}, {}, unit)
    bad = validate_algebra(a)
    if bad:
        raise StructureError(f"ordinary algebra axioms fail: {bad[0]}")
    return a


def make_field_algebra(field: Field) -> DGAlgebra:
    return make_ordinary(field, [[[1]]])


def make_dual_numbers(field: Field) -> DGAlgebra:
    """k[t]/(t^2) in degree 0; basis (1, t)."""
    return make_ordinary(field, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])


def make_truncated_poly3(field: Field) -> DGAlgebra:
    """k[t]/(t^3); basis (1, t, t^2)."""
    return make_ordinary(field, [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    ])


def make_upper_triangular2(field: Field) -> DGAlgebra:
    """Upper triangular 2x2 matrices; basis (e11, e12, e22); noncommutative."""
    z = [0, 0, 0]
    return make_ordinary(field, [
        [[1, 0, 0], [0, 1, 0], z],
        [z, z, [0, 1, 0]],
        [z, [0, 0, 0], [0, 0, 1]],
    ], unit=[field.one, field.zero, field.one])


def make_exterior(field: Field, contractible: bool = False) -> DGAlgebra:
    """Lambda = k<eps>, |eps| = -1, eps^2 = 0; d(eps) = 1 when contractible."""
    f = field
    dims = {-1: 1, 0: 1}
    mult = {
        (0, 0): Matrix.from_int_rows(f, [[1]]),
        (0, -1): Matrix.from_int_rows(f, [[1]]),
        (-1, 0): Matrix.from_int_rows(f, [[1]]),
        (-1, -1): Matrix.zeros(f, 0, 1),
    }
    d = Matrix.from_int_rows(f, [[1 if contractible else 0]])
    a = DGAlgebra(f, -1, dims, mult, {-1: d}, [f.one])
    assert not validate_algebra(a)
    return a


def make_koszul_dg(field: Field) -> DGAlgebra:
    """k[t]/(t^2) <eps> with d(eps) = t: degrees -1, 0 of dimension 2 each.

    Basis: degree 0 (1, t); degree -1 (eps, eps t).  Graded-commutative with
    nonzero differential; H^0 = k and H^{-1} = k.[eps t].
    """
    f = field
    dims = {-1: 2, 0: 2}
    m00 = Matrix.from_int_rows(f, [[1, 0, 0, 0], [0, 1, 1, 0]])
    # deg0 x deg-1 -> deg-1: 1*eps=eps, 1*epst=epst, t*eps=epst, t*epst=0
    m0m = Matrix.from_int_rows(f, [[1, 0, 0, 0], [0, 1, 1, 0]])
    # deg-1 x deg0: eps*1=eps, eps*t=epst, epst*1=epst, epst*t=0
    mm0 = Matrix.from_int_rows(f, [[1, 0, 0, 0], [0, 1, 1, 0]])
    mmm = Matrix.zeros(f, 0, 4)
    diff = {-1: Matrix.from_int_rows(f, [[0, 0], [1, 0]])}  # d(eps)=t, d(eps t)=0
    a = DGAlgebra(f, -1, dims,
                  {(0, 0): m00, (0, -1): m0m, (-1, 0): mm0, (-1, -1): mmm},
                  diff, [f.one, f.zero])
    bad = validate_algebra(a)
    if bad:
        raise StructureError(f"koszul family broken: {bad[0]}")
    return a


ALGEBRA_FAMILIES = {
    "field": make_field_algebra,
    "dual_numbers": make_dual_numbers,
    "truncated_poly3": make_truncated_poly3,
    "upper_triangular": make_upper_triangular2,
    "exterior": make_exterior,
    "exterior_contractible": lambda f: make_exterior(f, contractible=True),
    "koszul_dg": make_koszul_dg,
}


# ---------------------------------------------------------------------------
# Basic modules


def regular_module(a: DGAlgebra, side: str) -> DGModule:
    """A as a module over itself."""
    dims = dict(a.dims)
    diff = {i: a.diff_map(i) for i in a.degrees()}
    action = {}
    for i in a.degrees():
        for j in a.degrees():
            if a.dim(i) and a.dim(j) and a.dim(i + j):
                action[(i, j)] = a.mult_map(i, j) if side == RIGHT else a.mult_map(j, i)
    return DGModule(side, a, (a.min_degree, 0), dims, diff, action)


def ordinary_module(a: DGAlgebra, side: str, action0: Matrix, degree: int = 0) -> DGModule:
    """Module concentrated in one degree over a degree-0 algebra."""
    n = action0.rows
    return DGModule(side, a, (degree, degree), {degree: n}, {}, {(degree, 0): action0})


def simple_module_dual_numbers(a: DGAlgebra, side: str) -> DGModule:
    """k with t acting by zero over k[t]/(t^2)."""
    f = a.field
    act = Matrix.from_int_rows(f, [[1, 0]])
    return ordinary_module(a, side, act)


def make_koszul_like(field: Field, depth: int, side: str = RIGHT) -> DGModule:
    """The periodic complex over k[t]/(t^2): generators g_0..g_depth at
    degrees 0..-depth with d(g_k) = g_{k-1} t."""
    a = make_dual_numbers(field)
    gens = list(range(0, -depth - 1, -1))
    # layout degree -k+1 only sees generator k-1, with basis (g_{k-1}, g_{k-1} t)
    diffs = [[] if k == 0 else [field.zero, field.one] for k in range(depth + 1)]
    mod, _ = free_module(a, side, gens, diffs)
    return mod


# ---------------------------------------------------------------------------
# Random free modules with repaired differentials


def random_element(field: Field, rng: random.Random):
    if field.is_prime_field:
        return rng.randrange(field.p)
    return field.of_int(rng.randint(-2, 2))


def random_free_module(a: DGAlgebra, side: str, rng: random.Random,
                       max_dim: int, span: int, n_gens: int | None = None):
    """Free module on random generators; d(g) sampled from the cocycles of
    the partial module so d^2 = 0 holds by construction."""
    lo_deg = -(span - 1)
    if n_gens is None:
        n_gens = rng.randint(1, 3)
    degrees = sorted((rng.randint(lo_deg, 0) for _ in range(n_gens)), reverse=True)
    gen_degrees = []
    gen_diffs = []
    for e in degrees:
        if gen_degrees:
            partial, lay = free_module(a, side, gen_degrees, gen_diffs)
            dim_at = partial.dim(e + 1)
            k = kernel_basis(partial.diff_map(e + 1))
            vec = [a.field.zero] * dim_at
            for row in k.data:
                c = random_element(a.field, rng)
                if c != a.field.zero:
                    vec = [a.field.add(x, a.field.mul(c, y)) for x, y in zip(vec, row)]
        else:
            vec = []
        gen_degrees.append(e)
        gen_diffs.append(vec)
    mod, _ = free_module(a, side, gen_degrees, gen_diffs)
    if max(mod.dims.values(), default=0) > max_dim:
        return None
    return mod


def random_module(a: DGAlgebra, side: str, rng: random.Random,
                  max_dim: int = 4, span: int = 4, tries: int = 12) -> DGModule:
    """A valid module from the recipe mix: free / cone / sum / truncation / shift."""
    for _ in range(tries):
        recipe = rng.choices(
            ["free", "cone", "sum", "trunc", "zero_h", "regular"],
            weights=[40, 15, 12, 15, 8, 10])[0]
        mod = None
        if recipe == "free":
            mod = random_free_module(a, side, rng, max_dim, span)
        elif recipe == "regular":
            mod = regular_module(a, side)
            if max(mod.dims.values(), default=0) > max_dim:
                mod = None
        elif recipe == "sum":
            m1 = random_free_module(a, side, rng, max_dim, span - 1, n_gens=1)
            m2 = random_free_module(a, side, rng, max_dim, span - 1, n_gens=1)
            if m1 and m2:
                mod = direct_sum(m1, m2)
        elif recipe == "cone":
            m1 = random_free_module(a, side, rng, max_dim, span - 1, n_gens=1)
            m2 = random_free_module(a, side, rng, max_dim, span - 1, n_gens=1)
            if m1 and m2:
                f = random_morphism(m1, m2, rng)
                mod = mapping_cone(f)
        elif recipe == "zero_h":
            m1 = random_free_module(a, side, rng, max_dim, span - 1, n_gens=1)
            if m1:
                mod = mapping_cone(StrictMorphism.identity(m1))
        elif recipe == "trunc":
            m1 = random_free_module(a, side, rng, max_dim, span)
            if m1:
                lo, hi = m1.window
                mod = smart_truncate(m1, rng.randint(lo, hi))
        if mod is None:
            continue
        if rng.random() < 0.2:
            mod = shift(mod, rng.choice([-2, -1, 1, 2]))
        if max(mod.dims.values(), default=0) <= max_dim and mod.total_dim() > 0:
            return mod
    raise GenerationError(f"could not build a module within caps (side={side})")


def random_morphism(m: DGModule, mp: DGModule, rng: random.Random) -> StrictMorphism:
    """A random strict morphism: sample the solution space of the
    chain-map + equivariance linear system."""
    if m.side != mp.side or m.algebra != mp.algebra:
        raise StructureError("incompatible endpoints")
    f = m.field
    a = m.algebra
    degs = sorted(set(m.degrees()) | set(mp.degrees()))
    offs = {}
    total = 0
    for i in degs:
        offs[i] = total
        total += mp.dim(i) * m.dim(i)
    if total == 0:
        return StrictMorphism.zero(m, mp)

    def var(i, r, s):
        return offs[i] + r * m.dim(i) + s

    rows = []

    def add_row(row):
        if any(x != f.zero for x in row):
            rows.append(row)

    for i in degs:
        dm, dmp = m.diff_map(i), mp.diff_map(i)
        for r in range(mp.dim(i + 1)):
            for c in range(m.dim(i)):
                row = [f.zero] * total
                for s in range(m.dim(i + 1)):
                    v = dm.data[s][c]
                    if v != f.zero:
                        row[var(i + 1, r, s)] = f.add(row[var(i + 1, r, s)], v)
                for s in range(mp.dim(i)):
                    v = dmp.data[r][s]
                    if v != f.zero:
                        row[var(i, s, c)] = f.sub(row[var(i, s, c)], v)
                add_row(row)
    for i in degs:
        if m.dim(i) == 0:
            continue
        for j in a.degrees():
            dj = a.dim(j)
            t = i + j
            if dj == 0 or (m.dim(t) == 0 and mp.dim(t) == 0):
                continue
            act, actp = m.action_map(i, j), mp.action_map(i, j)
            for r in range(mp.dim(t)):
                for cm in range(m.dim(i)):
                    for ca in range(dj):
                        row = [f.zero] * total
                        src_col = cm * dj + ca if m.side == RIGHT else ca * m.dim(i) + cm
                        for s in range(m.dim(t)):
                            v = act.data[s][src_col]
                            if v != f.zero:
                                row[var(t, r, s)] = f.add(row[var(t, r, s)], v)
                        for s in range(mp.dim(i)):
                            tcol = s * dj + ca if m.side == RIGHT else ca * mp.dim(i) + s
                            v = actp.data[r][tcol]
                            if v != f.zero:
                                row[var(i, s, cm)] = f.sub(row[var(i, s, cm)], v)
                        add_row(row)

    constraint = Matrix(f, len(rows), total, rows) if rows else Matrix.zeros(f, 0, total)
    basis = kernel_basis(constraint)
    sol = [f.zero] * total
    for row in basis.data:
        c = random_element(f, rng)
        if c != f.zero:
            sol = [f.add(x, f.mul(c, y)) for x, y in zip(sol, row)]
    maps = {}
    for i in degs:
        if mp.dim(i) and m.dim(i):
            block = Matrix.zeros(f, mp.dim(i), m.dim(i))
            for r in range(mp.dim(i)):
                for s in range(m.dim(i)):
                    block.data[r][s] = sol[var(i, r, s)]
            maps[i] = block
    return StrictMorphism(m, mp, maps)


# ---------------------------------------------------------------------------
# Corpus profiles


DEFAULT_FAMILY_MIX = {
    "field": 1.0,
    "dual_numbers": 2.0,
    "truncated_poly3": 1.0,
    "upper_triangular": 1.5,
    "exterior": 2.0,
    "exterior_contractible": 1.0,
    "koszul_dg": 2.0,
}


@dataclass(frozen=True)
class CorpusProfile:
    field: Field
    max_per_degree_dim: int = 4
    degree_span: int = 4
    instance_count: int = 200
    seed: int = 20240601
    family_mix: dict = dc_field(default_factory=lambda: dict(DEFAULT_FAMILY_MIX))

    def __post_init__(self):
        if self.instance_count <= 0 or self.max_per_degree_dim <= 0 or self.degree_span <= 0:
            raise StructureError("profile counts must be positive")
        if not self.family_mix or all(w <= 0 for w in self.family_mix.values()):
            raise StructureError("family mix must have a positive weight")
        unknown = set(self.family_mix) - set(ALGEBRA_FAMILIES)
        if unknown:
            raise StructureError(f"unknown families: {sorted(unknown)}")


@dataclass(frozen=True)
class Instance:
    name: str
    family: str
    algebra: DGAlgebra
    m: DGModule   # right module
    n: DGModule   # left module


def instance_rng(seed: int, idx: int) -> random.Random:
    return random.Random(f"{seed}:{idx}")


def generate_instance(profile: CorpusProfile, idx: int) -> Instance:
    rng = instance_rng(profile.seed, idx)
    names = sorted(profile.family_mix)
    weights = [profile.family_mix[k] for k in names]
    family = rng.choices(names, weights=weights)[0]
    algebra = ALGEBRA_FAMILIES[family](profile.field)
    try:
        m = random_module(algebra, RIGHT, rng, profile.max_per_degree_dim, profile.degree_span)
        n = random_module(algebra, LEFT, rng, profile.max_per_degree_dim, profile.degree_span)
    except GenerationError as exc:
        raise GenerationError(f"instance {idx} (seed {profile.seed}): {exc}") from exc
    return Instance(f"inst{idx:04d}", family, algebra, m, n)


def generate_corpus(profile: CorpusProfile):
    return [generate_instance(profile, i) for i in range(profile.instance_count)]


# ---------------------------------------------------------------------------
# Simple counterexample shrinking


def _shrink_candidates(inst: Instance):
    """Smaller valid variants: chop a top degree off M or N, or zero one
    structure-map entry (validator-gated by the caller)."""
    import dataclasses

    for attr in ("m", "n"):
        mod = getattr(inst, attr)
        lo, hi = mod.window
        if hi > lo:
            yield dataclasses.replace(inst, **{attr: smart_truncate(mod, hi - 1)})
        f = mod.field
        for kind in ("diff", "action"):
            table = getattr(mod, kind)
            for key in sorted(table, key=str):
                mat = table[key]
                for r in range(mat.rows):
                    for c in range(mat.cols):
                        if mat.data[r][c] == f.zero:
                            continue
                        from .linalg import Matrix
                        new = Matrix(f, mat.rows, mat.cols,
                                     [list(row) for row in mat.data])
                        new.data[r][c] = f.zero
                        patched = dict(table)
                        patched[key] = new
                        kwargs = {"diff": dict(mod.diff), "action": dict(mod.action)}
                        kwargs[kind] = patched
                        cand = DGModule(mod.side, mod.algebra, mod.window,
                                        dict(mod.dims), kwargs["diff"], kwargs["action"])
                        yield dataclasses.replace(inst, **{attr: cand})


def _instance_size(inst: Instance):
    nnz = 0
    for mod in (inst.m, inst.n):
        z = mod.field.zero
        for table in (mod.diff, mod.action):
            for mat in table.values():
                nnz += sum(1 for row in mat.data for x in row if x != z)
    return (inst.m.total_dim() + inst.n.total_dim(), nnz)


def shrink_instance(inst: Instance, still_failing, budget: int = 40) -> Instance:
    """Greedy shrink: keep any strictly smaller valid instance on which
    `still_failing` holds.  Bounded by `budget` candidate evaluations."""
    from .dgmodule import validate_module

    current = inst
    improved = True
    while improved and budget > 0:
        improved = False
        for cand in _shrink_candidates(current):
            budget -= 1
            if budget <= 0:
                break
            if _instance_size(cand) >= _instance_size(current):
                continue
            if validate_module(cand.m) or validate_module(cand.n):
                continue
            try:
                if still_failing(cand):
                    current = cand
                    improved = True
                    break
            except Exception:   # noqa: BLE001 - a crashing candidate is no shrink
                continue
    return current


# ---------------------------------------------------------------------------
# The degree -1 non-injectivity witness


@dataclass(frozen=True)
class NoninjectivityWitness:
    """(1.eps) (x) 1 - 1 (x) (eps.1) over the exterior algebra.

    Nonzero in (M^{-1} (x)_{A^0} N^0) (+) (M^0 (x)_{A^0} N^{-1}) but zero in
    (M (x)_A N)^{-1}; the comparison map is still surjective.
    """
    algebra: object
    m: object
    n: object
    element: list          # coordinates in the direct-sum source
    source_dim: int
    target_dim: int
    image: list            # coordinates in the tensor quotient
    surjective: bool

    @property
    def checks(self):
        from .checks import failed, passed
        f = self.algebra.field
        out = []
        out.append(passed("witness_source_dim", dim=self.source_dim)
                   if self.source_dim == 2 else
                   failed("witness_source_dim", counterexample={"dim": self.source_dim}))
        out.append(passed("witness_target_dim", dim=self.target_dim)
                   if self.target_dim == 1 else
                   failed("witness_target_dim", counterexample={"dim": self.target_dim}))
        nonzero = any(x != f.zero for x in self.element)
        out.append(passed("witness_nonzero_in_source") if nonzero else
                   failed("witness_nonzero_in_source"))
        zero_img = all(x == f.zero for x in self.image)
        out.append(passed("witness_zero_in_target") if zero_img else
                   failed("witness_zero_in_target",
                          counterexample={"image": [f.to_str(x) for x in self.image]}))
        out.append(passed("witness_map_surjective") if self.surjective else
                   failed("witness_map_surjective"))
        return out


def noninjectivity_witness(field: Field) -> NoninjectivityWitness:
    from .linalg import hstack, rank
    from .tensor import TensorComplex, balanced_tensor, module_degree_ring_module

    a = make_exterior(field)
    m = regular_module(a, RIGHT)
    n = regular_module(a, LEFT)
    f = field
    b1 = balanced_tensor(module_degree_ring_module(m, -1),
                         module_degree_ring_module(n, 0))
    b2 = balanced_tensor(module_degree_ring_module(m, 0),
                         module_degree_ring_module(n, -1))
    # (1.eps) (x) 1 in the first summand, -(1 (x) (eps.1)) in the second
    eps = [f.one]
    one = [f.one]
    m_eps = m.act(one, 0, eps, -1)        # 1.eps in M^{-1}
    eps_n = n.act(one, 0, eps, -1)        # eps.1 in N^{-1}
    comp1 = b1.project_pair(m_eps, one)
    comp2 = b2.project_pair(one, [f.neg(x) for x in eps_n])
    element = comp1 + comp2
    tc = TensorComplex(m, n)
    sp = tc.space(-1)
    img1 = tc.project_pair(m_eps, -1, one, 0)
    img2 = tc.project_pair(one, 0, eps_n, -1)
    image = [f.sub(x, y) for x, y in zip(img1, img2)]
    onto = sp.projection @ hstack([
        tc.embed_block(-1, -1, b1.ambient_dim) @ b1.space.section,
        tc.embed_block(-1, 0, b2.ambient_dim) @ b2.space.section,
    ])
    return NoninjectivityWitness(
        a, m, n, element, b1.dim + b2.dim, sp.quotient_dim, image,
        rank(onto) == sp.quotient_dim)
