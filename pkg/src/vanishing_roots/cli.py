"""Command line front end.

Exit codes: 0 success or match, 1 classification mismatch, 2 input error,
3 mathematical precondition failure (degenerate, indefinite, over capacity).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .constructions import (
    THEOREM_VARIETIES,
    Construction,
    ExpectedOutcome,
    OutcomeKind,
    classify_construction,
    construction_from_dict,
    default_catalog,
    outcome_matches,
    table2_constructions,
    theorem_filter,
)
from .errors import ConstructionError, LatticeError, NotIntegralError
from .lattice import Lattice
from .roots import ClassificationReport, classify, format_types
from .selftest import DEFAULT_SEED, run_selftest

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_MATH = 3


class InputError(Exception):
    pass


@dataclass
class ReportDocument:
    input: dict
    report: ClassificationReport
    expected: Optional[ExpectedOutcome] = None
    match: Optional[bool] = None
    elapsed_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "report": self.report.to_dict(),
            "expected": None if self.expected is None else self.expected.to_dict(),
            "match": self.match,
            "elapsed_seconds": self.elapsed_seconds,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        return cls(
            input=d["input"],
            report=ClassificationReport.from_dict(d["report"]),
            expected=None if d["expected"] is None else ExpectedOutcome.from_dict(d["expected"]),
            match=d["match"],
            elapsed_seconds=d["elapsed_seconds"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


def headline(report: ClassificationReport) -> str:
    return f"{report.summary}, |W|={report.weyl_order}, disc={report.disc.order}"


def report_lines(report: ClassificationReport) -> list[str]:
    lines = [
        f"rank: {report.rank}",
        f"discriminant group: {report.disc} (order {report.disc.order})",
        f"invariant factors: {list(report.disc.invariant_factors)}",
        f"roots: {report.root_count}",
        f"components: {format_types(report.components)}"
        + (" (reducible)" if len(report.components) > 1 else ""),
        f"weyl group order: {report.weyl_order}",
        f"roots span lattice: {'yes' if report.roots_span_lattice else 'no'}",
    ]
    if report.possible_overlattice_types is not None:
        cands = ", ".join(format_types(c) for c in report.possible_overlattice_types)
        lines.append(f"candidates {{{cands}}}")
    return lines


def construction_document(c: Construction) -> ReportDocument:
    start = time.perf_counter()
    report = classify_construction(c)
    expected = c.expected()
    doc = ReportDocument(
        input={**c.to_dict(), "variety": c.variety_name},
        report=report,
        expected=expected,
        match=outcome_matches(expected, report),
    )
    doc.elapsed_seconds = time.perf_counter() - start
    return doc


def construction_text(doc: ReportDocument) -> list[str]:
    lines = [f"{doc.input['label']}: {headline(doc.report)}"]
    lines += ["  " + line for line in report_lines(doc.report)]
    expected = doc.expected
    note = ""
    if expected is not None and expected.kind is OutcomeKind.IMPOSSIBLE:
        note = f" ({doc.report.summary} is not an irreducible spanning root system)"
    lines.append(f"  expected: {expected}{note}")
    lines.append("  MATCH" if doc.match else "  MISMATCH")
    return lines


# ---------------------------------------------------------------- commands


def load_lattice(path: str) -> Lattice:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    try:
        return Lattice.from_dict(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_classify(gram_file: str) -> tuple[list[ReportDocument], int]:
    lat = load_lattice(gram_file)
    start = time.perf_counter()
    report = classify(lat)
    doc = ReportDocument(
        input={"gram_file": gram_file, "label": lat.label},
        report=report,
        elapsed_seconds=time.perf_counter() - start,
    )
    return [doc], EXIT_OK


def _coerce(value: str):
    try:
        return int(value)
    except ValueError:
        return value


def parse_params(items: list[str]) -> dict:
    params: dict = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not of the form key=value")
        key, value = item.split("=", 1)
        params[key.strip()] = _coerce(value.strip())
    return params


def construction_from_cli(family: str, params: dict) -> Construction:
    """``blowup`` takes ``base=<family>`` plus ``base.<key>=<value>`` parameters."""
    params = dict(params)
    if family == "blowup":
        base_params = {k[5:]: params.pop(k) for k in list(params) if k.startswith("base.")}
        base_family = params.pop("base", None)
        if not base_family:
            raise ConstructionError("blowup needs base=<family>")
        params["base"] = {"family": base_family, "params": base_params}
    return construction_from_dict({"family": family, "params": params})


def cmd_construct(family: str, params: dict) -> tuple[list[ReportDocument], int]:
    c = construction_from_cli(family, params)
    doc = construction_document(c)
    return [doc], EXIT_OK if doc.match else EXIT_MISMATCH


def cmd_table2(only: Optional[str] = None) -> tuple[list[ReportDocument], int]:
    rows = table2_constructions()
    if only is not None:
        rows = [c for c in rows if c.row == only]
        if not rows:
            known = ", ".join(c.row for c in table2_constructions())
            raise InputError(f"unknown Del Pezzo table row {only!r}; known rows: {known}")
    docs = [construction_document(c) for c in rows]
    return docs, EXIT_OK if all(d.match for d in docs) else EXIT_MISMATCH


def load_catalog(path: str) -> list[Construction]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise InputError("catalog manifest must be a JSON list")
    return [construction_from_dict(entry) for entry in data]


def survivor_varieties(survivors) -> list[Optional[str]]:
    return sorted({c.variety_name for c in survivors}, key=lambda v: (v is None, v or ""))


def cmd_theorem(catalog: Optional[list[Construction]] = None) -> tuple[list[ReportDocument], int]:
    if catalog is None:
        catalog = default_catalog()
    survivors = theorem_filter(catalog)
    docs = [construction_document(c) for c in survivors]
    ok = set(survivor_varieties(survivors)) == set(THEOREM_VARIETIES)
    return docs, EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------- printing


def emit(docs, as_json: bool, text_lines, single: bool = False):
    if as_json:
        payload = docs[0].to_dict() if single else [d.to_dict() for d in docs]
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vanishing-roots",
        description="Exact lattice classification of vanishing root systems.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a lattice given as a JSON Gram file")
    c.add_argument("--gram", required=True, metavar="FILE")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("construct", help="build and classify a named construction")
    c.add_argument("--family", required=True)
    c.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("table2", help="reproduce the Del Pezzo threefold table")
    c.add_argument("--json", action="store_true")
    c.add_argument("--only", metavar="LABEL")

    c = sub.add_parser("theorem", help="filter a catalog down to A1 vanishing root systems")
    c.add_argument("--json", action="store_true")
    c.add_argument("--catalog", metavar="FILE", help="JSON catalog manifest (default: built in)")

    c = sub.add_parser("catalog", help="print the default catalog manifest as JSON")

    c = sub.add_parser("selftest", help="run seeded randomized consistency checks")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (InputError, ConstructionError, NotIntegralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


def _dispatch(args) -> int:
    if args.command == "classify":
        docs, code = cmd_classify(args.gram)
        d = docs[0]
        lines = [headline(d.report)] + report_lines(d.report)
        emit(docs, args.json, lines, single=True)
        return code

    if args.command == "construct":
        docs, code = cmd_construct(args.family, parse_params(args.param))
        emit(docs, args.json, construction_text(docs[0]), single=True)
        return code

    if args.command == "table2":
        docs, code = cmd_table2(args.only)
        lines = [f"{'row':<6}{'computed':<10}{'expected':<10}{'disc':>5}{'roots':>7}  result"]
        for d in docs:
            row = d.input["label"].split()[-1]
            lines.append(
                f"{row:<6}{d.report.summary:<10}{str(d.expected):<10}"
                f"{d.report.disc.order:>5}{d.report.root_count:>7}  "
                + ("MATCH" if d.match else "MISMATCH")
            )
        lines.append("all rows match" if code == EXIT_OK else "MISMATCH")
        emit(docs, args.json, lines)
        return code

    if args.command == "theorem":
        catalog = load_catalog(args.catalog) if args.catalog else None
        docs, code = cmd_theorem(catalog)
        by_variety: dict = {}
        for d in docs:
            by_variety.setdefault(d.input["variety"], []).append(d.input["label"])
        lines = [f"{len(by_variety)} A1 varieties ({len(docs)} catalog entries):"]
        for variety, labels in sorted(by_variety.items(), key=lambda kv: str(kv[0])):
            lines.append(f"  {variety or 'unidentified'}: {', '.join(labels)}")
        lines.append("MATCH" if code == EXIT_OK else "MISMATCH")
        emit(docs, args.json, lines)
        return code

    if args.command == "catalog":
        print(json.dumps([c.to_dict() for c in default_catalog()], indent=2))
        return EXIT_OK

    results = run_selftest(args.seed)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
