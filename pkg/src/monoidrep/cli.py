"""Command-line front end: structure and representation reports.

Reports written to stdout are deterministic byte-for-byte for fixed inputs;
timing goes to stderr.  Exit codes: 0 success, 2 parse/usage error,
3 resource cap exceeded, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from .cliffmunn import (
    CatalogError,
    cm_catalog,
    cm_roundtrip_check,
    monoid_green,
    reduce_rep,
)
from .elements import (
    ClosureCapError,
    ElementParseError,
    FiniteMonoid,
    PartialBijection,
    Transformation,
    closure,
    cycle_link_format,
    cycle_link_parse,
    full_transformation_monoid,
    symmetric_group,
    symmetric_inverse_monoid,
)
from .green import eggbox
from .lattice import (
    SGLElement,
    make_lattice,
    partition_lattice_report,
    sgl_monoid,
    sgl_order,
)
from .linrep import mapping_rep, serialize_representation
from .specht import specht_rep

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_VERIFY = 4

_SGL_KINDS = {
    "subsets": "subsets",
    "partitions": "set_partitions",
    "ordperm": "ordered_partitions_zero",
}


class SpecError(ValueError):
    pass


@dataclass
class BuiltMonoid:
    spec: str
    kind: str  # "S" | "I" | "T" | "SGL" | "gens"
    monoid: FiniteMonoid
    context: object = None  # SGLContext for SGL specs
    lattice_kind: str = None


def parse_and_build(spec_text: str) -> BuiltMonoid:
    parts = spec_text.split(":")
    try:
        if parts[0] in ("S", "I", "T") and len(parts) == 2:
            n = int(parts[1])
            if n < 1:
                raise SpecError("degree must be >= 1")
            if n > 6:
                raise SpecError("degree capped at 6 for desk scale")
            builder = {
                "S": symmetric_group,
                "I": symmetric_inverse_monoid,
                "T": full_transformation_monoid,
            }[parts[0]]
            return BuiltMonoid(spec_text, parts[0], builder(n))
        if parts[0] == "SGL" and len(parts) == 3:
            if parts[1] not in _SGL_KINDS:
                raise SpecError(f"unknown lattice kind {parts[1]!r}")
            n = int(parts[2])
            _, action = make_lattice(_SGL_KINDS[parts[1]], n)
            monoid, ctx = sgl_monoid(action)
            return BuiltMonoid(spec_text, "SGL", monoid, ctx, _SGL_KINDS[parts[1]])
        if parts[0] == "gens" and len(parts) >= 2:
            return _build_from_file(spec_text, spec_text.split(":", 1)[1])
    except (ValueError, SpecError) as exc:
        raise SpecError(f"bad monoid spec {spec_text!r}: {exc}") from exc
    raise SpecError(f"bad monoid spec {spec_text!r}")


def _build_from_file(spec_text: str, path: str) -> BuiltMonoid:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise SpecError("empty generator file")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("S", "I", "T"):
        raise SpecError("first line must be '<S|I|T> <degree>'")
    kind, n = head[0], int(head[1])
    gens = []
    for ln in lines[1:]:
        if kind == "T":
            body = ln.strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise SpecError(f"bad transformation {ln!r}")
            gens.append(Transformation(int(tok) for tok in body[1:-1].split(",")))
        else:
            pb = cycle_link_parse(ln, n)
            if kind == "S" and pb.rank != n:
                raise SpecError(f"{ln!r} is not a full permutation")
            gens.append(pb)
    if not gens:
        raise SpecError("no generators given")
    return BuiltMonoid(spec_text, kind, closure(gens))


# -- element and label text ---------------------------------------------------

def lattice_text(kind: str, value) -> str:
    if value == ():
        return "0" if kind == "ordered_partitions_zero" else "{}"
    if kind == "subsets":
        return "{" + ",".join(str(x) for x in value) + "}"
    blocks = ",".join("{" + ",".join(str(x) for x in b) + "}" for b in value)
    if kind == "set_partitions":
        return "{" + blocks + "}"
    return "(" + blocks + ")"


def element_text(el) -> str:
    if isinstance(el, PartialBijection):
        return cycle_link_format(el)
    if isinstance(el, Transformation):
        return str(el)
    if isinstance(el, SGLElement):
        g = cycle_link_format(el.group_element().to_partial_bijection())
        kind = getattr(el.context.lattice, "kind", None)
        return f"{g}@{lattice_text(kind, el.lattice_element())}"
    return str(el)


def fmt_partition(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def fmt_label(label) -> str:
    """A partition prints as (2,1); a tuple of partitions as ((2),(1))."""
    if label == ():
        return "()"
    if all(isinstance(x, int) for x in label):
        return fmt_partition(label)
    return "(" + ",".join(fmt_partition(p) for p in label) + ")"


def parse_label(text: str):
    """Inverse of fmt_label on well-formed input."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise SpecError(f"bad label {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    if inner.startswith("("):
        parts = []
        depth = 0
        start = None
        for k, ch in enumerate(inner):
            if ch == "(":
                if depth == 0:
                    start = k
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    parts.append(parse_label(inner[start:k + 1]))
            elif depth == 0 and ch not in ", ":
                raise SpecError(f"bad label {text!r}")
        return tuple(parts)
    try:
        return tuple(int(tok) for tok in inner.split(","))
    except ValueError:
        raise SpecError(f"bad label {text!r}") from None


def jclass_labels(built: BuiltMonoid):
    """Deterministic display label per J-class id."""
    from .cliffmunn import _apex_label

    classes, _ = monoid_green(built.monoid)
    return [
        _apex_label(built.monoid, classes, j) for j in range(len(classes.jclasses))
    ]


def resolve_jclass(built: BuiltMonoid, text: str) -> int:
    labels = jclass_labels(built)
    if text in labels:
        return labels.index(text)
    if text == "constants" and built.kind == "T":
        return labels.index("J1")
    if text.isdigit() and f"J{text}" in labels:
        return labels.index(f"J{text}")
    raise SpecError(f"no J-class {text!r}; available: {', '.join(labels)}")


# -- commands -----------------------------------------------------------------

def cmd_order(built: BuiltMonoid, out) -> int:
    lines = [f"command: order", f"spec: {built.spec}", f"order: {len(built.monoid)}"]
    if built.kind == "SGL":
        report = sgl_order(built.context.action)
        lines += [
            f"formula: {report.formula_total}",
            f"enumerated: {report.enumerated_total}",
            f"agreement: {'yes' if report.agree else 'no'}",
            "breakdown:",
        ]
        for value, count in report.breakdown:
            lines.append(f"  {lattice_text(built.lattice_kind, value)}: {count}")
        if built.lattice_kind == "set_partitions":
            n = built.context.group.elements[0].n
            p = partition_lattice_report(n)
            lines.append(f"young_index_total: {p.young_formula_value}")
            lines.append(
                f"young_index_agreement: {'yes' if p.matches_young_formula else 'no'}"
            )
            if not p.matches_young_formula:
                lines.append(
                    "FLAG: definitional order differs from the Young-subgroup index sum"
                )
    print("\n".join(lines), file=out)
    return EXIT_OK


def _eggbox_lines(built: BuiltMonoid, j: int, labels):
    monoid = built.monoid
    classes, _ = monoid_green(monoid)
    box = eggbox(monoid, classes, j)
    size = len(classes.jclasses[j])
    subgroup = max(
        (len(cell) for row, irow in zip(box.grid, box.idempotent_cells)
         for cell, flag in zip(row, irow) if flag),
        default=0,
    )
    lines = [
        f"jclass {labels[j]}: size {size}, rows {len(box.row_rclasses)}, "
        f"cols {len(box.col_lclasses)}, subgroup order {subgroup}"
    ]
    for row, irow in zip(box.grid, box.idempotent_cells):
        cells = [("*" if flag else "") + str(len(cell)) for cell, flag in zip(row, irow)]
        lines.append("  " + " ".join(cells))
    return lines


def cmd_eggbox(built: BuiltMonoid, jtext, fmt, out) -> int:
    monoid = built.monoid
    classes, poset = monoid_green(monoid)
    labels = jclass_labels(built)
    wanted = range(len(labels)) if jtext is None else [resolve_jclass(built, jtext)]
    lines = [f"command: eggbox", f"spec: {built.spec}", f"format: {fmt}",
             f"jclasses: {len(labels)}"]
    if fmt == "graph":
        for j in range(len(labels)):
            size = len(classes.jclasses[j])
            sub = _subgroup_order(monoid, classes, j)
            lines.append(f"node {labels[j]} size={size} subgroup={sub}")
        for low, high in poset.covers():
            lines.append(f"edge {labels[low]} {labels[high]}")
    else:
        lines.append("poset:")
        for low, high in poset.covers():
            lines.append(f"  {labels[low]} < {labels[high]}")
        for j in wanted:
            lines.extend(_eggbox_lines(built, j, labels))
    print("\n".join(lines), file=out)
    return EXIT_OK


def _subgroup_order(monoid, classes, j) -> int:
    idems = [i for i in classes.jclasses[j] if monoid.table[i, i] == i]
    if not idems:
        return 0
    return len(classes.hclasses[classes.hclass_of[idems[0]]])


def cmd_irreps(built: BuiltMonoid, check: bool, out) -> int:
    if built.kind == "T":
        print(
            "error: irreducible catalogs are only built for inverse monoids; "
            "full transformation monoids are not semisimple in characteristic 0 "
            "(the mapping representation has an invariant hyperplane but no "
            "invariant complement), so no complete catalog exists here",
            file=sys.stderr,
        )
        return EXIT_PARSE
    catalog = cm_catalog(built.monoid)
    lines = [
        f"command: irreps",
        f"spec: {built.spec}",
        f"entries: {len(catalog)}",
        "columns: apex label dim",
    ]
    for en in catalog:
        lines.append(f"{en.apex_label} {fmt_label(en.label)} {en.dim}")
    total = sum(en.dim ** 2 for en in catalog)
    lines.append(f"sum_dim_sq: {total}")
    lines.append(f"order: {len(built.monoid)}")
    if check:
        lines.append(f"check_complete: {'yes' if total == len(built.monoid) else 'no'}")
        passed = sum(1 for en in catalog if cm_roundtrip_check(built.monoid, en))
        lines.append(f"check_roundtrips: {passed}/{len(catalog)}")
        if total != len(built.monoid) or passed != len(catalog):
            print("\n".join(lines), file=out)
            return EXIT_VERIFY
    print("\n".join(lines), file=out)
    return EXIT_OK


def _build_rep(built: BuiltMonoid, build: str):
    parts = build.split(":")
    if parts[0] == "mapping" and len(parts) == 1:
        if built.kind == "SGL":
            raise SpecError("mapping representations exist for S:, I:, T: specs")
        return mapping_rep(built.monoid), built.monoid
    if parts[0] == "specht" and len(parts) == 2:
        if built.kind != "S":
            raise SpecError("specht representations live over S:n specs")
        lam = parse_label(parts[1])
        n = built.monoid.elements[0].n
        if sum(lam) != n:
            raise SpecError(f"{fmt_label(lam)} is not a partition of {n}")
        return specht_rep(lam).rep, built.monoid
    if parts[0] == "induce" and len(parts) == 3:
        if built.kind not in ("I", "SGL"):
            raise SpecError("induction needs an inverse monoid spec (I: or SGL:)")
        j = resolve_jclass(built, parts[1])
        label = parse_label(parts[2])
        catalog = cm_catalog(built.monoid)
        for en in catalog:
            if en.apex == j and (en.label == label or en.label == (label,)):
                return en.rep, built.monoid
        raise SpecError(f"no irreducible {parts[2]} at J-class {parts[1]}")
    if parts[0] == "reduce" and len(parts) == 3 and parts[1] == "mapping":
        if built.kind == "SGL":
            raise SpecError("reduce:mapping needs an S:, I: or T: spec")
        j = resolve_jclass(built, parts[2])
        classes, _ = monoid_green(built.monoid)
        idems = [i for i in classes.jclasses[j] if built.monoid.table[i, i] == i]
        red = reduce_rep(mapping_rep(built.monoid), min(idems))
        if red.rep is None:
            raise SpecError(f"the reduction at J-class {parts[2]} is zero")
        return red.rep, red.group
    raise SpecError(f"unknown build {build!r}")


def cmd_rep(built: BuiltMonoid, build: str, out_path, out) -> int:
    rep, carrier_monoid = _build_rep(built, build)
    rep.verify()  # re-proved immediately before writing
    payload = serialize_representation(
        rep, monoid_label=built.spec, element_text=element_text
    )
    lines = [
        f"command: rep",
        f"spec: {built.spec}",
        f"build: {build}",
        f"dim: {rep.dim}",
        f"elements: {len(rep.monoid)}",
        "verified: yes",
    ]
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
        lines.append(f"out: {out_path}")
        print("\n".join(lines), file=out)
    else:
        lines.append("payload:")
        print("\n".join(lines), file=out)
        out.write(payload)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoidrep",
        description="Finite monoid structure and exact irreducible representations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="order of the monoid (formula vs enumeration for SGL)")
    p.add_argument("spec")

    p = sub.add_parser("eggbox", help="J-class poset and eggbox grids")
    p.add_argument("spec")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--jclass", help="one J-class by label (e.g. J2, constants, (2,1))")
    group.add_argument("--all", action="store_true", help="all J-classes (default)")
    p.add_argument("--format", choices=("text", "graph"), default="text")

    p = sub.add_parser("irreps", help="catalog of irreducible representations")
    p.add_argument("spec")
    p.add_argument("--check", action="store_true",
                   help="verify completeness and reduction/induction roundtrips")

    p = sub.add_parser("rep", help="build and serialize one representation")
    p.add_argument("spec")
    p.add_argument("--build", required=True,
                   help="mapping | specht:<shape> | induce:<jclass>:<label> | reduce:mapping:<jclass>")
    p.add_argument("--out", help="write the payload to this file")
    return parser


def run(argv, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        built = parse_and_build(args.spec)
        if args.command == "order":
            return cmd_order(built, out)
        if args.command == "eggbox":
            return cmd_eggbox(built, args.jclass, args.format, out)
        if args.command == "irreps":
            return cmd_irreps(built, args.check, out)
        if args.command == "rep":
            return cmd_rep(built, args.build, args.out, out)
        raise AssertionError(f"unhandled command {args.command}")
    except (SpecError, ElementParseError, FileNotFoundError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClosureCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except Exception as exc:  # verification failures are internal bugs
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    start = time.monotonic()
    code = run(sys.argv[1:])
    print(f"# elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    sys.exit(code)


if __name__ == "__main__":
    main()
