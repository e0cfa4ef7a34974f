"""Command-line front end.

Commands: check, cohomology, harmonic, cone, all; each takes a builtin
model name or a path to a .alg file.  Exit status 0 means every asserted
invariant and every normative identity passed (printed-form typos that
hold under a recorded variant still count as passes, with the variant
named in the report); 1 means some verification failed; 2 means the
input could not be used.  Output is byte-deterministic for a fixed
configuration, and no output format ever contains a floating-point
number: scalars are printed as exact rationals a/b (plus c/di when a
Gaussian part is present).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .cohomology import basic_subcomplex, full_complex, harmonic_space, transversal_package
from .cones import (
    DecompositionVerdict,
    lefschetz_cone_package,
    sasakian_decomposition,
    sasakian_harmonic_check,
    vaisman_decomposition,
    vaisman_harmonic_check,
)
from .models import BUILTIN_NAMES, ModelError, builtin, load_model_file
from .operators import RelationReport
from .splitting import (
    antisymmetry_report,
    jacobi_report,
    kahler_relations,
    lee_foliation,
    reeb_foliation,
    sasakian_relations,
    sigma_foliation,
    vaisman_structure_relations,
)

COMMANDS = ("check", "cohomology", "harmonic", "cone", "all")
FORMATS = ("text", "json", "csv")


@dataclass
class RunConfig:
    command: str
    model: str
    degree: int | None = None
    format: str = "text"
    output: str | None = None


class Report:
    """Ordered sections, rendered to text, json or csv deterministically."""

    def __init__(self, command: str, model_name: str):
        self.command = command
        self.model_name = model_name
        self.sections: list[tuple[str, list[dict]]] = []
        self.failed = False

    def add_relations(self, title: str, rep: RelationReport):
        rows = []
        for e in rep.entries:
            rows.append({
                "kind": "relation", "name": e.name, "lhs": e.lhs, "rhs": e.rhs,
                "verdict": e.verdict, "variant": e.variant,
                "vacuous": e.vacuous, "detail": e.failure, "line": e.line(),
            })
            if not e.ok():
                self.failed = True
        self.sections.append((title, rows))

    def add_verdict(self, title: str, v: DecompositionVerdict):
        rows = []
        for r in v.rows:
            rows.append({
                "kind": "degree", "degree": r.degree, "actual": r.actual,
                "proof": r.proof, "headline": r.claimed,
                "headline_consistent": r.headline_ok, "branch": r.branch,
                "ok": r.ok, "notes": r.notes, "witnesses": list(r.witnesses),
                "line": r.line(),
            })
            if not r.ok:
                self.failed = True
        for e in v.extras:
            rows.append({
                "kind": "relation", "name": e.name, "lhs": e.lhs, "rhs": e.rhs,
                "verdict": e.verdict, "variant": e.variant,
                "vacuous": e.vacuous, "detail": e.failure, "line": e.line(),
            })
            if not e.ok():
                self.failed = True
        self.sections.append((title, rows))

    def add_table(self, title: str, columns: list[str], rows: list[dict]):
        for r in rows:
            r.setdefault("kind", "table")
        self.sections.append((title, [{"kind": "header", "columns": columns}] + rows))

    def add_basis(self, title: str, rows: list[dict]):
        self.sections.append((title, rows))

    # -- renderers -----------------------------------------------------

    def to_text(self) -> str:
        out = [f"== {self.command} {self.model_name} =="]
        for title, rows in self.sections:
            out.append(f"-- {title}")
            for r in rows:
                if r["kind"] == "header":
                    out.append("  " + " | ".join(r["columns"]))
                elif r["kind"] == "table":
                    cols = [c for c in r if c not in ("kind",)]
                    out.append("  " + " | ".join(str(r[c]) for c in cols))
                elif r["kind"] == "basis":
                    out.append(f"  degree {r['degree']} [{r['index']}]: {r['form']}")
                else:
                    out.append("  " + r["line"])
        out.append(f"result: {'FAIL' if self.failed else 'OK'}")
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "model": self.model_name,
            "passed": not self.failed,
            "sections": [
                {"title": title, "rows": [
                    {k: v for k, v in r.items() if k != "line"} for r in rows
                ]}
                for title, rows in self.sections
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["section", "kind", "key", "value", "verdict", "detail"])
        for title, rows in self.sections:
            for r in rows:
                if r["kind"] == "header":
                    continue
                if r["kind"] == "table":
                    key = str(r.get("complex", r.get("degree", "")))
                    rest = {k: v for k, v in r.items() if k not in ("kind", "complex")}
                    writer.writerow([title, "table", key,
                                     ";".join(f"{k}={v}" for k, v in rest.items()), "", ""])
                elif r["kind"] == "basis":
                    writer.writerow([title, "basis", r["degree"], r["form"], "", str(r["index"])])
                elif r["kind"] == "degree":
                    writer.writerow([title, "degree", r["degree"], r["actual"],
                                     "ok" if r["ok"] else "fail", r.get("notes") or ""])
                else:
                    writer.writerow([title, "relation", r["name"], r["rhs"],
                                     r["verdict"], r.get("variant") or r.get("detail") or ""])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return {"text": self.to_text, "json": self.to_json, "csv": self.to_csv}[fmt]()


def _load(name: str):
    if name in BUILTIN_NAMES:
        return builtin(name)
    if os.path.exists(name):
        return load_model_file(name)
    raise ModelError(
        f"unknown model {name!r}: not a builtin ({', '.join(BUILTIN_NAMES)}) "
        "and no such file")


def _betti_rows(label, coh):
    return [{"complex": label, "degree": k, "betti": coh.betti.get(k, 0)}
            for k in coh.degrees]


def _run_check(report: Report, model, pack):
    if pack.kind == "kahler":
        report.add_relations("relation table", kahler_relations(model, pack))
    elif pack.kind == "sasakian":
        report.add_relations("relation table", sasakian_relations(model, pack))
        report.add_relations("transversal package (reeb foliation)",
                             transversal_package(model, pack, reeb_foliation(pack)))
    else:
        report.add_relations("structure table", vaisman_structure_relations(model, pack))
        report.add_relations("transversal package (canonical foliation)",
                             transversal_package(model, pack, sigma_foliation(pack)))
        from .cohomology import basic_adjoint_check
        report.add_relations("basic adjoint identity (lee foliation)",
                             basic_adjoint_check(model, pack, lee_foliation(pack)))
    guards = RelationReport(model.name, "superalgebra guards")
    guards.add(antisymmetry_report(model, pack))
    guards.add(jacobi_report(model, pack, exhaustive=model.dim <= 3))
    report.add_relations("superalgebra guards", guards)


def _run_cohomology(report: Report, model, pack):
    full = full_complex(model, pack).cohomology()
    rows = _betti_rows("full", full)
    if pack.kind == "sasakian":
        rows += _betti_rows("basic", basic_subcomplex(model, pack, reeb_foliation(pack)).cohomology())
    elif pack.kind == "vaisman":
        hsas = basic_subcomplex(model, pack, lee_foliation(pack)).cohomology()
        hkah = basic_subcomplex(model, pack, sigma_foliation(pack)).cohomology()
        rows += _betti_rows("sas", hsas)
        rows += _betti_rows("kah", hkah)
        for k in full.degrees:
            rows.append({"complex": "theta-splitting", "degree": k,
                         "betti": f"{hsas.betti.get(k, 0)}+{hsas.betti.get(k - 1, 0)}"})
    report.add_table("betti numbers", ["complex", "degree", "betti"], rows)
    if pack.kind == "sasakian":
        report.add_verdict("cohomology decomposition", sasakian_decomposition(model, pack))
    elif pack.kind == "vaisman":
        report.add_verdict("cohomology decomposition", vaisman_decomposition(model, pack))


def _run_harmonic(report: Report, model, pack, degree):
    degrees = range(model.dim + 1) if degree is None else [degree]
    rows = []
    for k in degrees:
        basis = harmonic_space(model, pack, k)
        for j, f in enumerate(basis):
            rows.append({"kind": "basis", "degree": k, "index": j, "form": str(f)})
    report.add_basis("harmonic bases", rows)
    if pack.kind == "sasakian":
        report.add_verdict("harmonic decomposition", sasakian_harmonic_check(model, pack))
    elif pack.kind == "vaisman":
        report.add_verdict("harmonic decomposition", vaisman_harmonic_check(model, pack))


def _run_cone(report: Report, model, pack):
    package = lefschetz_cone_package(model, pack)
    report.add_verdict("cone equivalence and long exact sequence", package.verdict)


def run(config: RunConfig) -> int:
    """Execute one command; returns the exit status and emits the report."""
    try:
        model, pack = _load(config.model)
    except (ModelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.degree is not None and not 0 <= config.degree <= model.dim:
        print(f"error: degree {config.degree} outside 0..{model.dim}", file=sys.stderr)
        return 2
    if config.command == "cone" and pack.kind == "kahler":
        print("error: the cone construction needs a reeb direction "
              "(sasakian or vaisman model)", file=sys.stderr)
        return 2

    report = Report(config.command, model.name)
    try:
        if config.command in ("check", "all"):
            _run_check(report, model, pack)
        if config.command in ("cohomology", "all"):
            _run_cohomology(report, model, pack)
        if config.command in ("harmonic", "all"):
            _run_harmonic(report, model, pack, config.degree)
        if config.command in ("cone", "all") and pack.kind != "kahler":
            _run_cone(report, model, pack)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = report.render(config.format)
    if config.output:
        try:
            with open(config.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {config.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 1 if report.failed else 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieforms",
        description="exact operator-relation and cohomology verdicts on Lie-algebra models",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd)
        p.add_argument("model", help=f"builtin ({'|'.join(BUILTIN_NAMES)}) or .alg file path")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--output", default=None, help="write the report to a file")
        if cmd in ("harmonic", "all"):
            p.add_argument("--degree", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    config = RunConfig(
        command=args.command, model=args.model,
        degree=getattr(args, "degree", None),
        format=args.format, output=args.output,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
