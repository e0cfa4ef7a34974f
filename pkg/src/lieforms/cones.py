"""Cone complexes, long exact sequences, and the cohomology/harmonic
decomposition verdicts for contact-type and Vaisman models.

The normative yardstick for the decomposition theorems is the pair of
short exact sequences coming out of the long exact sequence of the
Lefschetz cone, not the headline ker/coker phrasing: the two disagree at
extreme degrees, and the verdict records both readings rather than
silently correcting either.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import FormElement, star_on_subset, wedge
from .matrices import Matrix, Vector, in_span, nullspace, rank, solve, subspace_equal
from .models import LieModel, StructureError, StructurePack, structure_operators
from .operators import RelationEntry, form_to_vector
from .cohomology import (
    CochainComplex,
    FormComplex,
    basic_subcomplex,
    full_complex,
    induced_map,
    invariant_subcomplex,
)
from .scalars import Scalar, ZERO
from .splitting import lee_foliation, reeb_foliation, sigma_foliation


@dataclass
class ChainMap:
    """Degree-preserving map of coordinate complexes, commuting with d."""

    label: str
    source: CochainComplex
    target: CochainComplex
    blocks: dict[int, Matrix]

    def __post_init__(self):
        for k in self.source.degrees:
            if k + 1 not in self.source.dims or k + 1 not in self.target.dims:
                continue
            lhs = self.target.d(k) @ self.block(k)
            rhs = self.block(k + 1) @ self.source.d(k)
            if lhs != rhs:
                raise StructureError("chain_map",
                                     f"{self.label} fails to commute with d at degree {k}")

    def block(self, k: int) -> Matrix:
        return self.blocks.get(k, Matrix.zero(self.target.dim(k), self.source.dim(k)))


def build_cone(phi: ChainMap) -> CochainComplex:
    """Cone_k = source_{k+1} (+) target_k with the twisted differential
    (c, c') -> (d c, phi(c) - d c')."""
    src, tgt = phi.source, phi.target
    degrees = sorted(set(list(src.degrees) + list(tgt.degrees)))
    degrees = tuple(k for k in range(degrees[0] - 1, degrees[-1] + 1))
    dims = {k: src.dim(k + 1) + tgt.dim(k) for k in degrees}
    diff = {}
    for k in degrees:
        if k + 1 not in dims:
            continue
        a = src.d(k + 1)
        top = a.hstack(Matrix.zero(a.nrows, tgt.dim(k)))
        bot = phi.block(k + 1).hstack(tgt.d(k).scale(Scalar.of(-1)))
        diff[k] = top.vstack(bot)
    gram = {}
    for k in degrees:
        gs = src.gram.get(k + 1, Matrix.identity(src.dim(k + 1)))
        gt = tgt.gram.get(k, Matrix.identity(tgt.dim(k)))
        top = gs.hstack(Matrix.zero(gs.nrows, gt.ncols))
        bot = Matrix.zero(gt.nrows, gs.ncols).hstack(gt)
        gram[k] = top.vstack(bot)
    cone = CochainComplex(f"cone({phi.label})", degrees, dims, diff, gram)
    return cone


@dataclass
class DegreeVerdict:
    degree: int
    claimed: int | None
    proof: int | None
    actual: int
    ok: bool
    headline_ok: bool | None = None
    branch: str | None = None
    notes: str = ""
    witnesses: tuple[str, ...] = ()

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        bits = [f"degree {self.degree}: actual {self.actual}"]
        if self.proof is not None:
            bits.append(f"proof-sequence {self.proof}")
        if self.claimed is not None:
            bits.append(f"headline {self.claimed}" +
                        (" (inconsistent)" if self.headline_ok is False else ""))
        if self.branch:
            bits.append(f"branch {self.branch}")
        if self.notes:
            bits.append(self.notes)
        return f"{status}  " + "; ".join(bits)


@dataclass
class DecompositionVerdict:
    model: str
    theorem: str
    rows: list[DegreeVerdict] = field(default_factory=list)
    extras: list[RelationEntry] = field(default_factory=list)

    def passed(self) -> bool:
        return all(r.ok for r in self.rows) and all(e.ok() for e in self.extras)

    def row(self, degree: int) -> DegreeVerdict:
        for r in self.rows:
            if r.degree == degree:
                return r
        raise KeyError(degree)


def long_exact_check(phi: ChainMap, cone: CochainComplex | None = None) -> DecompositionVerdict:
    """Exactness of ... -> H^i(C) -> H^i(C') -> H^i(cone) -> H^{i+1}(C) -> ...

    at every node, via exact rank bookkeeping: consecutive maps compose to
    zero and rank(in) + rank(out) = dim(middle).
    """
    if cone is None:
        cone = build_cone(phi)
    src, tgt = phi.source, phi.target
    hs, ht, hc = src.cohomology(), tgt.cohomology(), cone.cohomology()
    phi_star = induced_map(phi.blocks, src, tgt, hs, ht)

    # inclusion target -> cone and projection cone -> source[1]
    inc_blocks, proj_blocks = {}, {}
    for k in cone.degrees:
        sdim, tdim = src.dim(k + 1), tgt.dim(k)
        inc = Matrix.zero(sdim, tdim).vstack(Matrix.identity(tdim))
        inc_blocks[k] = inc
        proj = Matrix.identity(sdim).hstack(Matrix.zero(sdim, tdim))
        proj_blocks[k] = proj
    inc_star = _induced_raw(inc_blocks, cone, ht, hc, 0)
    proj_star = _induced_raw(proj_blocks, src, hc, hs, 1)

    verdict = DecompositionVerdict(phi.source.label, f"long exact sequence of {phi.label}")
    for k in sorted(hc.betti):
        # node H^k(C'): in = phi*, out = inc*
        ok1, note1 = _exact_at(phi_star.get(k), inc_star.get(k), ht.betti.get(k, 0))
        # node H^k(cone): in = inc*, out = proj*
        ok2, note2 = _exact_at(inc_star.get(k), proj_star.get(k), hc.betti.get(k, 0))
        # node H^{k+1}(C): in = proj*, out = phi* at k+1
        ok3, note3 = _exact_at(proj_star.get(k), phi_star.get(k + 1), hs.betti.get(k + 1, 0))
        ok = ok1 and ok2 and ok3
        verdict.rows.append(DegreeVerdict(
            degree=k, claimed=None, proof=None, actual=hc.betti.get(k, 0), ok=ok,
            notes="; ".join(x for x in (note1, note2, note3) if x)))
    return verdict


def _induced_raw(blocks, tgt_complex_src, src_coh, tgt_coh, offset):
    """induced_map wrapper for maps whose source is the cone/cone-like side."""
    # blocks[k]: complex-of-src_coh degree k -> complex-of-tgt_coh degree k+offset
    out = {}
    for k in src_coh.degrees:
        tk = k + offset
        if tk not in tgt_coh.betti:
            continue
        reps_t = tgt_coh.representatives[tk]
        dim_t = len(reps_t[0]) if reps_t else tgt_complex_src.dim(tk)
        cols = []
        for r in src_coh.representatives[k]:
            v = blocks[k].apply(r) if k in blocks else tuple([ZERO] * dim_t)
            sys = Matrix.from_cols(list(reps_t), dim_t)
            if tk - 1 in tgt_complex_src.dims:
                sys = sys.hstack(tgt_complex_src.d(tk - 1))
            x = solve(sys, v)
            if x is None:
                raise StructureError("chain_map", "image class not closed")
            cols.append(tuple(x[: len(reps_t)]))
        out[k] = Matrix.from_cols(cols, len(reps_t))
    return out


def _exact_at(incoming: Matrix | None, outgoing: Matrix | None, middle_dim: int):
    rk_in = rank(incoming) if incoming is not None else 0
    rk_out = rank(outgoing) if outgoing is not None else 0
    if incoming is not None and outgoing is not None and incoming.nrows and outgoing.ncols:
        comp = outgoing @ incoming
        if not comp.is_zero():
            return False, "composition of consecutive maps nonzero"
    if rk_in + rk_out != middle_dim:
        return False, f"rank {rk_in}+{rk_out} != dim {middle_dim}"
    return True, ""


# -- the Lefschetz cone equivalence ------------------------------------


@dataclass
class ConePackage:
    ambient: FormComplex
    basic: FormComplex
    phi: ChainMap
    cone: CochainComplex
    iso_blocks: dict[int, Matrix]  # ambient degree i -> cone degree i-1
    verdict: DecompositionVerdict


def lefschetz_cone_package(model: LieModel, pack: StructurePack) -> ConePackage:
    """Identify the invariant complex with the shifted cone of L.

    The isomorphism sends alpha + eta^beta to (beta, alpha); it must
    intertwine the differentials exactly, and the induced long exact
    sequence must be exact at every node.
    """
    ops = structure_operators(model, pack)
    if pack.kind == "sasakian":
        ambient = invariant_subcomplex(model, pack)
        basic = basic_subcomplex(model, pack, reeb_foliation(pack))
    elif pack.kind == "vaisman":
        ambient = invariant_subcomplex(model, pack, extra=lee_foliation(pack))
        basic = basic_subcomplex(model, pack, sigma_foliation(pack))
    else:
        raise StructureError("cone", "cone package needs a reeb direction")

    src = basic.shift(-1)   # C_i = bas^{i-1}
    tgt = basic.shift(1)    # C'_i = bas^{i+1}
    lblocks = basic.restrict(ops.L)
    phi_blocks = {k: lblocks[k - 1] for k in src.degrees if k - 1 in lblocks}
    phi = ChainMap("L", src, tgt, phi_blocks)
    cone = build_cone(phi)

    # iso ambient^i -> cone_{i-1} = bas^i (+) bas^{i+1}... rather:
    # cone_{i-1} = src_i (+) tgt_{i-1} = bas^{i-1} (+) bas^i, as (beta, alpha)
    iso_blocks = {}
    n = model.dim
    for i in ambient.degrees:
        cols = []
        for j in range(ambient.dim(i)):
            x = ambient.embed[i].col(j)
            # beta = i_r(x); alpha = x - eta ^ beta
            beta = ops.i_r.blocks[i].apply(x)
            alpha = tuple(a - b for a, b in zip(x, ops.e_r.blocks[i - 1].apply(beta))) if i >= 1 else x
            bcoords = solve(basic.embed[i - 1], beta) if i >= 1 else ()
            acoords = solve(basic.embed[i], alpha)
            if bcoords is None or acoords is None:
                raise StructureError("cone", "invariant form is not basic + eta^basic")
            cols.append(tuple(bcoords) + tuple(acoords))
        iso_blocks[i] = Matrix.from_cols(cols, cone.dim(i - 1))

    verdict = DecompositionVerdict(model.name, "cone equivalence")
    intertwines = True
    bijective = True
    for i in ambient.degrees:
        if i + 1 in ambient.dims and i in cone.dims:
            lhs = cone.d(i - 1) @ iso_blocks[i]
            rhs = iso_blocks[i + 1] @ ambient.d(i)
            if lhs != rhs:
                intertwines = False
        m = iso_blocks[i]
        if m.nrows != m.ncols or rank(m) != m.nrows:
            bijective = False
    verdict.extras.append(RelationEntry(
        "cone.isomorphism", "alpha + eta^beta -> (beta, alpha)",
        "intertwines d with the cone differential",
        "pass" if intertwines else "fail"))
    verdict.extras.append(RelationEntry(
        "cone.bijective", "identification", "degreewise bijection",
        "pass" if bijective else "fail"))
    les = long_exact_check(phi, cone)
    verdict.rows.extend(les.rows)

    # the averaging proxy: invariant subcomplex computes the full cohomology
    amb_coh = ambient.cohomology()
    if pack.kind == "sasakian":
        reference = full_complex(model, pack).cohomology()
    else:
        reference = basic_subcomplex(model, pack, lee_foliation(pack)).cohomology()
    proxy_ok = amb_coh.betti_list() == reference.betti_list()
    verdict.extras.append(RelationEntry(
        "cone.invariant_proxy", f"H({ambient.label})", f"H({reference.label})",
        "pass" if proxy_ok else "fail"))

    # H^i(cone) must reproduce H^{i+1} of the ambient complex
    hc = cone.cohomology()
    match = all(hc.betti.get(i - 1, 0) == amb_coh.betti.get(i, 0) for i in ambient.degrees)
    verdict.extras.append(RelationEntry(
        "cone.cohomology_match", "H^{i-1}(cone)", "H^i(invariant complex)",
        "pass" if match else "fail"))
    return ConePackage(ambient, basic, phi, cone, iso_blocks, verdict)


# -- decomposition of cohomology ---------------------------------------


def _lefschetz_on_basic_cohomology(model, pack, basic, coh):
    ops = structure_operators(model, pack)
    blocks = basic.restrict(ops.L)
    return induced_map(blocks, basic, basic, coh, coh, degree_offset=2)


def sasakian_decomposition(model: LieModel, pack: StructurePack) -> DecompositionVerdict:
    """Full Betti numbers from the basic ones through the Lefschetz map.

    Proof-sequence reading (normative): dim H^i = coker(L: H^{i-2}_bas ->
    H^i_bas) for i <= n and ker(L: H^{i-1}_bas -> H^{i+1}_bas) for i > n.
    The headline ker/coker phrasing is evaluated alongside and flagged
    where it disagrees (it does at degree 0).
    """
    basic = basic_subcomplex(model, pack, reeb_foliation(pack))
    coh = basic.cohomology()
    full = full_complex(model, pack).cohomology()
    lef = _lefschetz_on_basic_cohomology(model, pack, basic, coh)
    n = pack.transversal_dim(model.dim)

    verdict = DecompositionVerdict(model.name, "cohomology from the basic complex")
    inj_ok, surj_ok = True, True
    for i in range(model.dim + 1):
        b = lambda k: coh.betti.get(k, 0)
        rk_into = rank(lef[i - 2]) if i - 2 in lef else 0
        rk_from = rank(lef[i - 1]) if i - 1 in lef else 0
        if i <= n:
            proof = b(i) - rk_into
            if i - 2 in lef and rk_into != b(i - 2):
                inj_ok = False
            claimed = b(i) - (rank(lef[i]) if i in lef else 0)  # ker L on H^i
        else:
            proof = b(i - 1) - rk_from
            if i - 1 in lef and rk_from != b(i + 1):
                surj_ok = False
            claimed = b(i) - rk_into  # coker into H^i
        actual = full.betti.get(i, 0)
        verdict.rows.append(DegreeVerdict(
            degree=i, claimed=claimed, proof=proof, actual=actual,
            ok=proof == actual, headline_ok=claimed == actual,
            branch="i<=n" if i <= n else "i>n"))
    verdict.extras.append(RelationEntry(
        "decomposition.lefschetz_injective", "L: H^{i-2}_bas -> H^i_bas, i <= n",
        "injective", "pass" if inj_ok else "fail"))
    verdict.extras.append(RelationEntry(
        "decomposition.lefschetz_surjective", "L: H^{i-1}_bas -> H^{i+1}_bas, i > n",
        "surjective", "pass" if surj_ok else "fail"))
    headline_disagrees = [r.degree for r in verdict.rows if not r.headline_ok]
    verdict.extras.append(RelationEntry(
        "decomposition.headline_vs_proof",
        "headline ker/coker placement",
        "proof-sequence placement",
        "noted",
        failure=("headline reading disagrees with the proof sequences at degrees "
                 f"{headline_disagrees}; the proof sequences are normative")
        if headline_disagrees else "both readings agree on this model"))
    return verdict


def _harmonic_branch_spaces(model, pack, basic, ops, degree):
    """The two candidate spaces: primitive basic-harmonic forms at the
    degree, and eta ^ (co-primitive basic-harmonic) one degree lower."""
    n_amb = model.dim
    harm = {k: basic.ambient_vectors(k, basic.harmonic_coords(k)) for k in basic.degrees}

    def cut(vectors, op, k):
        if not vectors:
            return []
        mat = Matrix.from_cols(vectors)
        blocked = op.blocks[k] @ mat
        kern = nullspace(blocked)
        return [mat.apply(c) for c in kern]

    b1 = cut(harm.get(degree, []), ops.Lam, degree)
    prev = cut(harm.get(degree - 1, []), ops.L, degree - 1) if degree >= 1 else []
    b2 = [form_to_vector(wedge(vector_to_form_amb(model, degree - 1, v), pack.eta), degree)
          for v in prev]
    return b1, b2


def vector_to_form_amb(model, k, v):
    from .operators import vector_to_form

    return vector_to_form(model.dim, k, v)


def sasakian_harmonic_check(model: LieModel, pack: StructurePack) -> DecompositionVerdict:
    """Harmonic forms are primitive basic-harmonic ones below the middle
    and eta-wedges of co-primitive basic-harmonic ones above it."""
    ops = structure_operators(model, pack)
    basic = basic_subcomplex(model, pack, reeb_foliation(pack))
    n = pack.transversal_dim(model.dim)
    verdict = DecompositionVerdict(model.name, "harmonic decomposition")
    delta = ops.delta

    for i in range(model.dim + 1):
        b1, b2 = _harmonic_branch_spaces(model, pack, basic, ops, i)
        target = nullspace(delta.blocks[i])
        stated = b1 if i <= n else b2
        other = b2 if i <= n else b1
        chosen, branch = stated, "stated"
        if not subspace_equal(stated, target) and subspace_equal(other, target):
            chosen, branch = other, "flipped"
        contained = all(in_span(target, v) for v in chosen)
        equal = subspace_equal(chosen, target)
        verdict.rows.append(DegreeVerdict(
            degree=i, claimed=len(stated), proof=len(chosen), actual=len(target),
            ok=contained and equal, headline_ok=len(stated) == len(target),
            branch=branch,
            witnesses=tuple(str(vector_to_form_amb(model, i, v)) for v in chosen)))

    # star duality: *(gamma) = *_bas(gamma) ^ eta for horizontal gamma
    hor = tuple(pack.horizontal_indices(model.dim))
    dual_ok = True
    from .forms import hodge_star
    from itertools import combinations

    for k in range(len(hor) + 1):
        for m in combinations(hor, k):
            gamma = FormElement.monomial(model.dim, m)
            lhs = hodge_star(gamma)
            rhs = wedge(star_on_subset(gamma, hor), pack.eta)
            if lhs != rhs:
                dual_ok = False
    verdict.extras.append(RelationEntry(
        "harmonic.star_duality", "*(gamma)", "*_bas(gamma) ^ eta",
        "pass" if dual_ok else "fail"))
    return verdict


def vaisman_decomposition(model: LieModel, pack: StructurePack) -> DecompositionVerdict:
    """Splitting of the cohomology along the Lee form, with the
    transversally-Kahler sequences for the Lee-basic cohomology."""
    sas = basic_subcomplex(model, pack, lee_foliation(pack))
    kah = basic_subcomplex(model, pack, sigma_foliation(pack))
    hsas, hkah = sas.cohomology(), kah.cohomology()
    full = full_complex(model, pack).cohomology()
    lef = _lefschetz_on_basic_cohomology(model, pack, kah, hkah)
    n = model.dim // 2  # complex dimension of the model

    verdict = DecompositionVerdict(model.name, "cohomology along the Lee form")
    for i in range(model.dim + 1):
        split_dim = hsas.betti.get(i, 0) + hsas.betti.get(i - 1, 0)
        actual = full.betti.get(i, 0)
        verdict.rows.append(DegreeVerdict(
            degree=i, claimed=None, proof=split_dim, actual=actual,
            ok=split_dim == actual, notes="H^i_sas + theta^H^{i-1}_sas"))

    inj_ok, surj_ok, seq_ok = True, True, True
    headline_bad = []
    for i in range(model.dim):
        b = lambda k: hkah.betti.get(k, 0)
        rk_into = rank(lef[i - 2]) if i - 2 in lef else 0
        rk_from = rank(lef[i - 1]) if i - 1 in lef else 0
        if i <= n - 1:
            proof = b(i) - rk_into
            claimed = b(i) - (rank(lef[i]) if i in lef else 0)
            if i - 2 in lef and rk_into != b(i - 2):
                inj_ok = False
        else:
            proof = b(i - 1) - rk_from
            claimed = b(i) - rk_into
            if i - 1 in lef and rk_from != b(i + 1):
                surj_ok = False
        actual = hsas.betti.get(i, 0)
        if proof != actual:
            seq_ok = False
        if claimed != actual:
            headline_bad.append(i)
    verdict.extras.append(RelationEntry(
        "decomposition.sas_from_kah", "H^i_sas", "proof sequences in H^*_kah",
        "pass" if seq_ok else "fail"))
    verdict.extras.append(RelationEntry(
        "decomposition.lefschetz_injective", "L: H^{i-2}_kah -> H^i_kah, i <= n-1",
        "injective", "pass" if inj_ok else "fail"))
    verdict.extras.append(RelationEntry(
        "decomposition.lefschetz_surjective", "L: H^{i-1}_kah -> H^{i+1}_kah, i > n-1",
        "surjective", "pass" if surj_ok else "fail"))
    verdict.extras.append(RelationEntry(
        "decomposition.headline_vs_proof", "headline ker/coker placement",
        "proof-sequence placement", "noted",
        failure=(f"headline reading disagrees at degrees {headline_bad}; "
                 "the proof sequences are normative") if headline_bad
        else "both readings agree on this model"))
    return verdict


def vaisman_harmonic_check(model: LieModel, pack: StructurePack) -> DecompositionVerdict:
    """Full harmonic space = H* (+) theta ^ H* with H* built from the
    transversal basic-harmonic forms."""
    ops = structure_operators(model, pack)
    kah = basic_subcomplex(model, pack, sigma_foliation(pack))
    hsas = basic_subcomplex(model, pack, lee_foliation(pack)).cohomology()
    n = model.dim // 2
    delta = ops.delta
    verdict = DecompositionVerdict(model.name, "harmonic forms along the Lee form")

    chosen: dict[int, list[Vector]] = {}
    for i in range(model.dim + 1):
        b1, b2 = _harmonic_branch_spaces(model, pack, kah, ops, i)
        stated = b1 if i <= n else b2
        other = b2 if i <= n else b1
        target_dim = hsas.betti.get(i, 0)
        branch = "stated"
        pick = stated
        if len(stated) != target_dim and len(other) == target_dim:
            pick, branch = other, "flipped"
        chosen[i] = pick
        verdict.rows.append(DegreeVerdict(
            degree=i, claimed=len(stated), proof=len(pick), actual=target_dim,
            ok=len(pick) == target_dim, headline_ok=len(stated) == target_dim,
            branch=branch, notes="dim H^i candidates vs dim H^i_sas",
            witnesses=tuple(str(vector_to_form_amb(model, i, v)) for v in pick)))

    theta_ok = True
    assemble_ok = True
    for i in range(model.dim + 1):
        assembled = list(chosen.get(i, []))
        for v in chosen.get(i - 1, []):
            f = wedge(pack.theta, vector_to_form_amb(model, i - 1, v))
            assembled.append(form_to_vector(f, i))
        target = nullspace(delta.blocks[i])
        if not subspace_equal(assembled, target):
            assemble_ok = False
        # wedging a full harmonic form with the parallel theta stays harmonic
        if i + 1 <= model.dim:
            for h in target:
                f = wedge(pack.theta, vector_to_form_amb(model, i, h))
                img = form_to_vector(f, i + 1)
                if not in_span(nullspace(delta.blocks[i + 1]), img):
                    theta_ok = False
    verdict.extras.append(RelationEntry(
        "harmonic.assembly", "H* (+) theta^H*", "ker Delta, degreewise subspace equality",
        "pass" if assemble_ok else "fail"))
    verdict.extras.append(RelationEntry(
        "harmonic.theta_wedge", "theta ^ (ker Delta)", "ker Delta",
        "pass" if theta_ok else "fail"))
    return verdict
