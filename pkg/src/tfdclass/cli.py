"""Command-line front end: enumerate, verify, invariants, exceptional, decompose."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys

from .catalog import (
    COLUMNS, FAMILY_ORDER, GoldenIOError, SchemaError, attach_golden_labels, diff, golden_catalog,
    rebuild, record_from_json, record_to_json, table_row,
)
from .certificates import check_certificate, embedded_certificates
from .curves import enumerate_decompositions
from .enumerator import FAMILIES, canonicalize, enumerate_all, enumerate_family
from .exceptional import enumerate_exceptional
from .invariants import compute_invariants
from .lattice import LatticeError, TruncationError, parse_class, surface_from_id

EXIT_OK, EXIT_USAGE, EXIT_TRUNCATION, EXIT_IO, EXIT_MISMATCH = 0, 1, 2, 3, 4

HEADERS = {
    "label": "label", "M0": "M₀", "omega0": "[ω₀]", "euler_classes": "e(P_c⁺)",
    "fixed_components": "fixed components", "b2": "b₂", "c1_cubed": "c₁³",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tfdclass", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="enumerate TFD records")
    e.add_argument("--family", help="one of: " + ", ".join(FAMILIES))
    e.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    e.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("verify", help="enumerate everything and diff against the golden tables")
    v.add_argument("--jobs", type=int, default=1)

    i = sub.add_parser("invariants", help="recompute invariants of a stored record")
    i.add_argument("--input", required=True)

    x = sub.add_parser("exceptional", help="list exceptional classes of a surface")
    x.add_argument("surface")

    d = sub.add_parser("decompose", help="list decompositions of a class into fixed surfaces")
    d.add_argument("surface")
    d.add_argument("cls")
    return p


def _labelled(records):
    try:
        gold = [canonicalize(g) for g in golden_catalog()]
    except GoldenIOError as exc:
        logging.getLogger(__name__).warning("golden labels unavailable: %s", exc)
        return records
    return sorted(attach_golden_labels(records, gold), key=_label_order)


def _label_order(r):
    parts = re.split(r"[-.:]", r.label)
    return (FAMILY_ORDER.index(r.family), [int(p) if p.isdigit() else p for p in parts])


def render(records, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([record_to_json(r) for r in records], indent=1, ensure_ascii=False) + "\n"
    rows = [table_row(r) for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([HEADERS[c] for c in COLUMNS])
        for row in rows:
            w.writerow([row[c] for c in COLUMNS])
        return buf.getvalue()
    lines = ["| " + " | ".join(HEADERS[c] for c in COLUMNS) + " |",
             "|" + "---|" * len(COLUMNS)]
    for row in rows:
        lines.append("| " + " | ".join(str(row[c]).replace("|", "\\|") for c in COLUMNS) + " |")
    return "\n".join(lines) + "\n"


def cmd_enumerate(args, out) -> int:
    if args.family is not None and args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; expected one of {', '.join(FAMILIES)}")
    recs = enumerate_family(args.family, args.jobs) if args.family else enumerate_all(args.jobs)
    out.write(render(_labelled(recs), args.format))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    gold = [canonicalize(g) for g in golden_catalog()]
    computed = enumerate_all(args.jobs)
    rep = diff(computed, gold)
    certs = embedded_certificates()
    good = sum(1 for k in range(2, 9) if k in certs and check_certificate(certs[k]))
    matched = len(gold) - len(rep.missing) - len(rep.mismatches)
    for line in rep.lines():
        out.write(line + "\n")
    out.write(f"{matched}/{len(gold)} match, {good}/7 certificates valid\n")
    ok = not rep and len(computed) == len(gold) and good == 7
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_invariants(args, out) -> int:
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{args.input}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    stored = record_from_json(data)
    fresh = rebuild(stored)
    inv = compute_invariants(fresh.slices)
    out.write(f"record   {stored.label}\n")
    out.write(f"b2       stored {stored.b2}  recomputed {inv.b2}\n")
    out.write(f"c1^3     stored {stored.c1_cubed}  recomputed {inv.c1_cubed}\n")
    out.write(f"volumes  min {inv.vol_min}  max {inv.vol_max}")
    if inv.vol_z0:
        out.write("  Z0 " + " ".join(str(v) for v in inv.vol_z0))
    out.write("\n")
    return EXIT_OK


def cmd_exceptional(args, out) -> int:
    classes = enumerate_exceptional(surface_from_id(args.surface)).classes
    for c in classes:
        out.write(f"{c}\n")
    out.write(f"count {len(classes)}\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    M = surface_from_id(args.surface)
    target = parse_class(M, args.cls)
    ds = sorted(enumerate_decompositions(M, target), key=lambda d: [p.cls.coeffs for p in d.parts])
    for d in ds:
        out.write(" + ".join(f"[{p.cls}] (g={p.genus})" for p in d.parts) + "\n")
    out.write(f"count {len(ds)}\n")
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "invariants": cmd_invariants,
    "exceptional": cmd_exceptional,
    "decompose": cmd_decompose,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"tfdclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, LatticeError, ValueError) as exc:
        print(f"tfdclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TruncationError as exc:
        print(f"tfdclass: truncation: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except OSError as exc:
        print(f"tfdclass: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
