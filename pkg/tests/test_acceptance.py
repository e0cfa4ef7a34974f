"""Acceptance suite: one test per exit criterion, exact equality throughout.

Every check is zero-tolerance: matrix identities are compared entry by
entry over the Gaussian rationals, dimension identities as integers, and
subspace statements as exact rank computations.  One sub-clause of
criterion 2 (nonzeroness of the twisted-square identity on the round
3-sphere model) is provably unattainable on the fixed built-in models
and is kept as an honest red test; its failure message carries the
argument.
"""

import oracle
from lieforms.cli import RunConfig, run
from lieforms.cohomology import basic_subcomplex, full_complex, transversal_package
from lieforms.cones import (
    lefschetz_cone_package,
    sasakian_decomposition,
    sasakian_harmonic_check,
    vaisman_decomposition,
    vaisman_harmonic_check,
)
from lieforms.operators import supercommutator
from lieforms.splitting import (
    antisymmetry_report,
    foliation_split,
    jacobi_report,
    kahler_relations,
    reeb_foliation,
    sasakian_relations,
    sigma_foliation,
)

from conftest import model_pack, ops_for, record_criterion

SASAKIAN = ("su2", "h3", "h5")
VAISMAN = ("su2xr", "h3xr")


def test_criterion_1_kahler_susy_table():
    failures = []
    for name in ("torus2", "torus4"):
        model, pack = model_pack(name)
        rep = kahler_relations(model, pack)
        for e in rep.entries:
            if not e.ok():
                failures.append((name, e.line()))
        # the sl(2) weight of the lowering operator is -2; the printed +2
        # is the one typo in the table and must be adjudicated, not ignored
        if rep.entry("sl2.[H,Lam]").variant != "-2Lam":
            failures.append((name, "missing [H,Lam] adjudication"))
        if rep.entry("sl2.H_scalar").verdict != "pass":
            failures.append((name, "H is not (p-n)Id"))
        for key in ("delta.{d,d*}", "delta.{dc,dc*}"):
            if not rep.entry(key).ok():
                failures.append((name, key))
        for e in rep.entries:
            if e.name.startswith("delta.central") and e.verdict != "pass":
                failures.append((name, e.name))
    ok = record_criterion(1, "Kahler supersymmetry table exact on torus2/torus4",
                          not failures)
    assert ok, failures


def test_criterion_2_sasakian_susy_table():
    as_printed_groups = ("structure.", "squares.", "kodaira.", "mixed.", "reeb_pair.")
    failures = []
    for name in SASAKIAN:
        model, pack = model_pack(name)
        rep = sasakian_relations(model, pack)
        for e in rep.entries:
            if any(e.name.startswith(g) for g in as_printed_groups):
                if e.verdict != "pass":
                    failures.append((name, e.line()))
            elif e.name.startswith(("sl2.", "weil.", "laplacian.")):
                if not e.ok():
                    failures.append((name, e.line()))
        # the sl(2) relations hold in their usual form, with the one
        # printed sign typo named by the report
        hl = rep.entry("sl2.[H,Lam]")
        if not (hl.verdict == "pass" or hl.variant == "-2Lam"):
            failures.append((name, "sl2.[H,Lam] unresolved"))
        # the report must name the variant wherever a printed form fails
        for key in ("weil.[W,d1c*]", "laplacian.Delta1_def"):
            e = rep.entry(key)
            if e.verdict != "variant" or not e.variant:
                failures.append((name, f"{key} missing variant adjudication"))
        if rep.entry("squares.{d1,d1}").verdict != "pass":
            failures.append((name, "twisted square identity"))
    ok = record_criterion(
        2, "sasakian supersymmetry table on su2/h3/h5 (variants named)", not failures)
    assert ok, failures


def test_criterion_2_nonzeroness_clause_as_stated():
    """The criterion additionally demands {d1,d1} = -L(1) with both sides
    nonzero on su2.  On the invariant complex of the 3-dimensional round
    model this is impossible: d1 vanishes identically by bidegree
    bookkeeping (every generator differential is of lifting or dropping
    vertical type), and L(1) = L Lie_r = 0 because Lie_r's image consists
    of horizontal 1-forms that wedge to zero with the transversal area
    form in dimension 3.  Both sides are exactly zero, so the identity
    holds but the nonzeroness clause cannot; the test stays faithful to
    the clause rather than weakening it.
    """
    ops = ops_for("su2")
    model, pack = model_pack("su2")
    split = foliation_split(ops.d, model, reeb_foliation(pack))
    lhs = supercommutator(split.d1, split.d1)
    rhs = -(ops.L @ ops.lie_r)
    identity_holds = lhs == rhs.relabel(lhs.label)
    both_nonzero = (not lhs.is_zero()) and (not rhs.is_zero())
    record_criterion(
        2, "nonzeroness clause of the twisted square on su2 (as stated)",
        identity_holds and both_nonzero)
    assert identity_holds
    assert both_nonzero, (
        "{d1,d1} and -L(1) both vanish identically on the su2 invariant "
        "complex; the identity holds as 0 = 0 and no built-in model can "
        "witness it with nonzero sides (d1 = 0 on all of them)")


def test_criterion_3_splitting_identities():
    failures = []
    for name in SASAKIAN:
        model, pack = model_pack(name)
        ops = ops_for(name)
        split = foliation_split(ops.d, model, reeb_foliation(pack))
        d0, d1, d2 = split.d0, split.d1, split.d2
        if (d0 + d1.relabel(d0.label) + d2.relabel(d0.label)) != ops.d:
            failures.append((name, "reconstruction"))
        if d0 != ops.e_r @ ops.lie_r:
            failures.append((name, "d0 formula"))
        if d2 != ops.L @ ops.i_r:
            failures.append((name, "d2 formula"))
        if not (d0 @ d0).is_zero() or not (d2 @ d2).is_zero():
            failures.append((name, "squares"))
        if supercommutator(d0, d2) != (-supercommutator(d1, d1)).relabel(
                supercommutator(d0, d2).label):
            failures.append((name, "{d0,d2} = -{d1,d1}"))
    ok = record_criterion(3, "splitting identities d = d0+d1+d2 with the "
                             "product formulas, on every contact builtin",
                          not failures)
    assert ok, failures


def test_criterion_4_cone_equivalence():
    failures = []
    for name in SASAKIAN:
        model, pack = model_pack(name)
        package = lefschetz_cone_package(model, pack)
        if not package.verdict.passed():
            failures.append((name, [r.line() for r in package.verdict.rows if not r.ok]
                             + [e.line() for e in package.verdict.extras if not e.ok()]))
    ok = record_criterion(4, "cone identification exact and long exact sequence "
                             "exact at every node, on every contact builtin",
                          not failures)
    assert ok, failures


EXPECTED_BETTI = {
    "torus2": [1, 2, 1],
    "torus4": [1, 4, 6, 4, 1],
    "su2": [1, 0, 0, 1],
    "h3": [1, 2, 2, 1],
    "h5": [1, 4, 5, 5, 4, 1],
    "su2xr": [1, 1, 0, 1, 1],
    "h3xr": [1, 3, 4, 3, 1],
}
EXPECTED_BASIC = {
    ("h3", (3,)): [1, 2, 1],
    ("su2", (3,)): [1, 0, 1],
    ("su2xr", (1, 4)): [1, 0, 1],
}
ORACLE_MODELS = {
    "torus2": oracle.TORUS2, "torus4": oracle.TORUS4, "su2": oracle.SU2,
    "h3": oracle.H3, "h5": oracle.H5, "su2xr": oracle.SU2XR, "h3xr": oracle.H3XR,
}


def test_criterion_5_betti_tables_against_oracle():
    failures = []
    for name, want in EXPECTED_BETTI.items():
        model, pack = model_pack(name)
        got = full_complex(model, pack).cohomology().betti_list()
        oracle_says = oracle.betti_table(*ORACLE_MODELS[name])
        if not (got == want == oracle_says):
            failures.append((name, got, want, oracle_says))
    for (name, span), want in EXPECTED_BASIC.items():
        model, pack = model_pack(name)
        fol = (sigma_foliation(pack) if len(span) == 2 else reeb_foliation(pack))
        got = basic_subcomplex(model, pack, fol).cohomology().betti_list()
        oracle_says = oracle.basic_betti_table(*ORACLE_MODELS[name], span)
        top = len(want)
        if not (got[:top] == want == oracle_says and all(b == 0 for b in got[top:])):
            failures.append((name, span, got, want, oracle_says))
    ok = record_criterion(5, "Betti tables equal the frozen values and the "
                             "independent row-reduction oracle", not failures)
    assert ok, failures


def test_criterion_6_sasakian_decomposition():
    failures = []
    for name in SASAKIAN:
        model, pack = model_pack(name)
        verdict = sasakian_decomposition(model, pack)
        if not verdict.passed():
            failures.append((name, "sequences"))
    model, pack = model_pack("su2")
    verdict = sasakian_decomposition(model, pack)
    row0 = verdict.row(0)
    if not (row0.actual == 1 and row0.claimed == 0 and row0.headline_ok is False):
        failures.append(("su2", "headline discrepancy at degree 0 not detected"))
    note = [e for e in verdict.extras if e.name == "decomposition.headline_vs_proof"]
    import ast

    reported = (ast.literal_eval(note[0].failure.split("degrees ")[1].split(";")[0])
                if note and "disagrees" in note[0].failure else [])
    if 0 not in reported:
        failures.append(("su2", "discrepancy not reported"))
    ok = record_criterion(6, "proof sequences reproduce the full Betti numbers; "
                             "headline/proof discrepancy detected at degree 0",
                          not failures)
    assert ok, failures


def test_criterion_7_sasakian_harmonic_forms():
    failures = []
    for name in ("su2", "h3"):
        model, pack = model_pack(name)
        verdict = sasakian_harmonic_check(model, pack)
        for row in verdict.rows:
            if not row.ok:
                failures.append((name, row.line()))
    ok = record_criterion(7, "constructed harmonic spaces equal ker Delta "
                             "degreewise as subspaces on su2 and h3", not failures)
    assert ok, failures


def test_criterion_8_vaisman_theorems():
    failures = []
    for name in VAISMAN:
        model, pack = model_pack(name)
        dec = vaisman_decomposition(model, pack)
        if not dec.passed():
            failures.append((name, "theta splitting"))
        harm = vaisman_harmonic_check(model, pack)
        if not harm.passed():
            failures.append((name, "harmonic assembly"))
        if not any(e.name == "harmonic.assembly" and e.verdict == "pass"
                   for e in harm.extras):
            failures.append((name, "assembly entry"))
    ok = record_criterion(8, "Lee-form splitting of cohomology and harmonic "
                             "spaces on both Vaisman builtins", not failures)
    assert ok, failures


def test_criterion_9_transversal_hodge_package():
    failures = []
    cases = [(name, reeb_foliation) for name in SASAKIAN]
    cases += [(name, sigma_foliation) for name in VAISMAN]
    for name, folf in cases:
        model, pack = model_pack(name)
        rep = transversal_package(model, pack, folf(pack))
        for key in ("transversal.hard_lefschetz", "transversal.pq_stability",
                    "basic_adjoint.pairing", "split_laplacian.self_adjoint",
                    "split_laplacian.psd_decomposition",
                    "split_laplacian.diagonal_nonnegative",
                    "split_laplacian.commutes_with_Pi_hor",
                    "split_laplacian.eigen_exactness"):
            if rep.entry(key).verdict != "pass":
                failures.append((name, key))
    ok = record_criterion(9, "transversal package: hard Lefschetz, bigraded "
                             "stability, basic adjoint, split-Laplacian "
                             "positivity and commutation", not failures)
    assert ok, failures


def test_criterion_10_structural_guards(tmp_path):
    failures = []
    for name in ("su2", "h3"):
        model, pack = model_pack(name)
        if not jacobi_report(model, pack, exhaustive=True).ok():
            failures.append((name, "jacobi"))
        if not antisymmetry_report(model, pack).ok():
            failures.append((name, "antisymmetry"))
    for name in ("h5", "su2xr", "h3xr"):
        model, pack = model_pack(name)
        if not jacobi_report(model, pack, exhaustive=False).ok():
            failures.append((name, "jacobi sample"))
    for name in ("su2", "h3", "h5"):
        model, pack = model_pack(name)
        betti = full_complex(model, pack).cohomology().betti_list()
        if betti != betti[::-1]:
            failures.append((name, "poincare duality"))
        if sum((-1) ** k * b for k, b in enumerate(betti)) != 0:
            failures.append((name, "euler characteristic"))
    for fmt in ("text", "json", "csv"):
        paths = []
        for tag in ("a", "b"):
            p = tmp_path / f"det-{tag}.{fmt}"
            assert run(RunConfig(command="check", model="h3", format=fmt,
                                 output=str(p))) == 0
            paths.append(p.read_bytes())
        if paths[0] != paths[1]:
            failures.append((fmt, "nondeterministic output"))
    ok = record_criterion(10, "exhaustive Jacobi pool, duality/Euler guards, "
                              "byte-deterministic output", not failures)
    assert ok, failures
