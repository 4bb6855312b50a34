"""Command line interface.

Every verb is a thin adapter over the library; all numeric output is exact
and the reports are byte-deterministic for identical inputs.  Exit status is
0 on success/pass, 1 on validation failure or assertion mismatch, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import verify as verify_mod
from .enumeration import (basis_at_vertex, basis_counts_closed,
                          dimension_generalized, dimension_triangulation)
from .errors import (ConnectivityError, FormatError, GentriqError, GluingError,
                     StructureError)
from .quiver import load_gtq, quiver_isomorphic
from .relations import (relations_generalized, relations_lambda_dblprime,
                        relations_triangulation)
from .star import (default_weights, orbit_data, star_quiver,
                   validate_weights, virtual_arrows, weights_from_text)
from .surface import parse_surface, surface_to_quiver
from .transforms import (delta_construction, detect_exceptional, mutate_stage1,
                         mutate_stage2, roundtrip_check)

USAGE_ERROR = 2
CHECK_FAILED = 1


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}")


def _load_quiver(path: str):
    q = load_gtq(_read(path))
    sq = star_quiver(q)
    od = orbit_data(sq)
    return q, sq, od


def _load_weights(od, path: str | None):
    if path is None:
        return default_weights(od)
    return weights_from_text(od, _read(path))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _cycle(cyc) -> str:
    return "(" + " ".join(cyc) + ")"


def cmd_validate(args) -> int:
    q = load_gtq(_read(args.quiver), check_connectivity=False)
    diags = q.validate()
    if not diags:
        print(f"OK: {len(q.vertices)} vertices, {len(q.arrows)} arrows, "
              f"{len(q.blocks)} blocks")
        return 0
    for d in diags:
        print(f"invalid: {d}")
    return CHECK_FAILED


def cmd_orbits(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    print(f"vertices: {len(q.vertices)}")
    print(f"arrows: {len(q.arrows)} ({len(sq.arrows)} in the reduced quiver)")
    print(f"f-orbits ({len(od.f_orbits)}):")
    for cyc in od.f_orbits:
        print(f"  {_cycle(cyc)}")
    print(f"g-orbits ({len(od.g_orbits)}):")
    for cyc in od.g_orbits:
        rep = cyc[0]
        print(f"  n={len(cyc)} nu={od.nu_count[rep]} phi={od.phi_count[rep]}: {_cycle(cyc)}")
    border = " ".join(sorted(od.border)) if od.border else "(empty)"
    print(f"border: {border}")
    return 0


def cmd_weights(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    for cyc in od.g_orbits:
        rep = cyc[0]
        print(f"orbit {_cycle(cyc)}: n={len(cyc)} m={w.m[rep]} c={w.c[rep]}")
    for v in sorted(od.border):
        print(f"border {v}: b={w.b_of(v)}")
    diags = validate_weights(od, w)
    if diags:
        for d in diags:
            print(f"inadmissible: {d}")
        return CHECK_FAILED
    print("weights admissible")
    try:
        virt = virtual_arrows(od, w)
        arrows = " ".join(sorted(virt.arrows)) if virt.arrows else "(none)"
        print(f"virtual arrows: {arrows}")
    except GentriqError as exc:
        print(f"virtual arrows: indeterminate ({exc})")
    return 0


def cmd_relations(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    if args.triangulation:
        rels = relations_triangulation(q, od, w)
    elif args.dblprime:
        d = delta_construction(q, sq, od, w)
        rels = relations_lambda_dblprime(mutate_stage1(d))
    else:
        rels = relations_generalized(q, sq, od, w)
    sys.stdout.write(rels.render())
    print(f"# {len(rels.relations)} relations")
    return 0


def cmd_basis(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    vertices = [args.vertex] if args.vertex else sorted(q.vertices)
    if args.vertex and args.vertex not in q.vertices:
        raise FormatError(f"unknown vertex {args.vertex!r}")
    concrete = w.all_m_concrete()
    rows = []
    print("vertex\tcase\tenumerated\tclosed")
    total_enum = 0
    mismatch = False
    for x in vertices:
        closed = basis_counts_closed(od, w, x)
        if concrete:
            bs = basis_at_vertex(q, sq, od, w, x)
            count = len(bs)
            total_enum += count
            tag = bs.case_tag
            if closed.value() != count:
                mismatch = True
            print(f"{x}\t{tag}\t{count}\t{closed.render()}")
            rows.append((x, count))
        else:
            print(f"{x}\t-\t-\t{closed.render()}")
    poly = dimension_generalized(q, od, w)
    if concrete and not args.vertex:
        print(f"total\t\t{total_enum}\t{poly.render()}")
    print(f"dim = {poly.render()}")
    if mismatch:
        print("DISCREPANCY: enumeration disagrees with the closed forms")
    if args.figure:
        if not concrete:
            raise FormatError("--figure needs concrete weights")
        _save_figure(rows, args.figure)
        print(f"wrote {args.figure}")
    return CHECK_FAILED if mismatch else 0


def _save_figure(rows, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [r[0] for r in rows]
    counts = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(rows) + 1.5), 3.2))
    ax.bar(range(len(rows)), counts, color="#4878a8")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("basis size")
    ax.set_title("per-vertex basis sizes")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_dim(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    if args.triangulation:
        poly = dimension_triangulation(q, od, w)
    else:
        poly = dimension_generalized(q, od, w)
    print(f"dim = {poly.render()}")
    return 0


def cmd_delta(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    d = delta_construction(q, sq, od, w)
    for warning in detect_exceptional(d):
        print(f"warning: {warning}")
    print(f"replacement quiver: {len(d.quiver.vertices)} vertices, "
          f"{len(d.quiver.arrows)} arrows")
    for cyc in d.orbits.g_orbits:
        rep = cyc[0]
        print(f"orbit {_cycle(cyc)}: n={len(cyc)} m={d.weights.m[rep]} c={d.weights.c[rep]}")
    _emit(d.quiver.to_gtq_text(), args.output)
    return 0


def cmd_mutate(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    d = delta_construction(q, sq, od, w)
    result = mutate_stage1(d)
    if args.stage == 2:
        result = mutate_stage2(result)
    seq = " ".join(result.virtual_sequence) or "(empty)"
    print(f"stage {result.stage}; virtual sequence: {seq}")
    for cyc in result.orbits.g_orbits:
        rep = cyc[0]
        print(f"orbit {_cycle(cyc)}: n={len(cyc)} m={result.weights.m[rep]} "
              f"c={result.weights.c[rep]}")
    _emit(result.quiver.to_gtq_text(), args.output)
    return 0


def cmd_roundtrip(args) -> int:
    q, sq, od = _load_quiver(args.quiver)
    w = _load_weights(od, args.weights)
    report = roundtrip_check(q, w)
    sys.stdout.write(report.render())
    if report.ok and report.witness:
        for a, b in sorted(report.witness["vertices"].items()):
            print(f"  vertex {a} -> {b}")
    return 0 if report.ok else CHECK_FAILED


def cmd_surface(args) -> int:
    surf = parse_surface(_read(args.surface))
    q = surface_to_quiver(surf)
    print(f"quiver: {len(q.vertices)} vertices, {len(q.arrows)} arrows, "
          f"{len(q.blocks)} blocks")
    _emit(q.to_gtq_text(), args.output)
    return 0


def cmd_iso(args) -> int:
    q1, _, _ = _load_quiver(args.first)
    q2, _, _ = _load_quiver(args.second)
    witness = quiver_isomorphic(q1, q2)
    if witness is None:
        print("NOT ISOMORPHIC")
        return CHECK_FAILED
    print("ISOMORPHIC")
    for a, b in sorted(witness["vertices"].items()):
        print(f"  vertex {a} -> {b}")
    for a, b in sorted(witness["arrows"].items()):
        print(f"  arrow {a} -> {b}")
    return 0


def cmd_dot(args) -> int:
    q, _, _ = _load_quiver(args.quiver)
    _emit(q.to_dot(), args.output)
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.run_all()
    for r in results:
        print(r.render())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return CHECK_FAILED if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gentriq",
        description="generalized triangulation quivers and their weighted algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the structural invariants of a quiver")
    p.add_argument("quiver")
    p = add("orbits", cmd_orbits, "print f- and g-orbits, lengths and border")
    p.add_argument("quiver")
    p = add("weights", cmd_weights, "resolve and check weight data")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    p = add("relations", cmd_relations, "print the defining relations")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--triangulation", action="store_true",
                   help="use the plain triangulation presentation")
    g.add_argument("--dblprime", action="store_true",
                   help="use the reduced presentation after stage-1 mutation")
    p = add("basis", cmd_basis, "per-vertex basis table and dimension")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    p.add_argument("--vertex")
    p.add_argument("--figure", help="write a bar chart of the basis sizes (PNG)")
    p = add("dim", cmd_dim, "dimension polynomial")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    p.add_argument("--triangulation", action="store_true")
    p = add("delta", cmd_delta, "replace marked blocks; emit the triangulation quiver")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    p.add_argument("-o", "--output")
    p = add("mutate", cmd_mutate, "run the mutation stages on the replacement quiver")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    p.add_argument("--stage", type=int, choices=(1, 2), default=1)
    p.add_argument("-o", "--output")
    p = add("roundtrip", cmd_roundtrip, "verify replacement + mutations return the input")
    p.add_argument("quiver")
    p.add_argument("-w", "--weights")
    p = add("surface", cmd_surface, "translate a marked triangulated surface")
    p.add_argument("surface")
    p.add_argument("-o", "--output")
    p = add("iso", cmd_iso, "test two quivers for isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p = add("dot", cmd_dot, "export to DOT")
    p.add_argument("quiver")
    p.add_argument("-o", "--output")
    add("verify", cmd_verify, "run the bundled verification suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, GluingError, ConnectivityError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except GentriqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
