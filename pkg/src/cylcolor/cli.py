"""Batch command line over the EMG text format.

Exit codes: 0 success, 1 property violation or census flag, 2 malformed
input or usage error, 3 brute-force guard exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import analysis, coloring, families, surgery
from .embedding import (
    EmbeddedGraph,
    emit_emg,
    parse_emg,
    parse_emg_stream,
    trace_faces,
)
from .errors import CylColorError, EMGParseError, TooLarge


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _load(path: Optional[str]) -> EmbeddedGraph:
    return parse_emg(_read_input(path))


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _parse_precolor(items: list[str]) -> dict[int, int]:
    out: dict[int, int] = {}
    for item in items:
        for chunk in item.split(","):
            if not chunk:
                continue
            k, _, v = chunk.partition("=")
            out[int(k)] = int(v)
    return out


def _guarded(g: EmbeddedGraph, guard: int) -> None:
    if g.n > guard:
        raise TooLarge(f"{g.n} vertices exceeds guard {guard} (use --guard)")


_FAMILY_KINDS = {
    "thomas-walls": "thomas_walls",
    "reduced": "reduced",
    "patches": "patches",
    "hexagon-disks": "hexagon_disks",
    "quad33": "quad33",
    "near-quad33": "near_quad33",
    "framed-tw": "framed_patched",
    "grid": "grid",
}


def _family_spec(args) -> families.FamilySpec:
    return families.FamilySpec(
        kind=_FAMILY_KINDS[args.family],
        n=args.n,
        max_internal=args.max_internal,
        max_vertices=args.max_vertices,
        patch_bound=getattr(args, "patch_bound", args.max_internal),
        width=args.width,
        layers=args.layers,
    )


def _cmd_gen(args) -> int:
    graphs = _family_spec(args).realize()
    if args.out_dir:
        import hashlib
        import os

        os.makedirs(args.out_dir, exist_ok=True)
        for g in graphs:
            name = hashlib.sha256(analysis.canonical_form(g)).hexdigest()[:16]
            with open(
                os.path.join(args.out_dir, f"{name}.emg"), "w", encoding="ascii"
            ) as fh:
                fh.write(emit_emg(g))
    else:
        _write("".join(emit_emg(g) for g in graphs), args.out)
    return 0


def _cmd_color(args) -> int:
    g = _load(args.input)
    _guarded(g, args.guard)
    psi = coloring.Precoloring(_parse_precolor(args.precolor))
    result = coloring.extend(g, psi)
    if result is None:
        _write("UNSAT\n", args.out)
    else:
        lines = [f"color {v} {result[v]}" for v in sorted(result)]
        _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_count(args) -> int:
    g = _load(args.input)
    _guarded(g, args.guard)
    psi = coloring.Precoloring(_parse_precolor(args.precolor))
    _write(f"{coloring.count_colorings(g, psi)}\n", args.out)
    return 0


def _cmd_extendset(args) -> int:
    g = _load(args.input)
    _guarded(g, args.guard)
    es = coloring.extendable_set(g)
    lines = ["domain " + " ".join(map(str, es.ring_domain))]
    for member in sorted(es.members):
        lines.append("member " + " ".join(map(str, member)))
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_critical(args) -> int:
    g = _load(args.input)
    report = analysis.is_critical(g, guard=args.guard)
    if report.is_critical:
        _write("critical=1\n", args.out)
    else:
        kind, detail = report.witness
        _write(f"critical=0 witness={kind}:{detail}\n", args.out)
    return 0


def _cmd_dominates(args) -> int:
    g1 = _load(args.input)
    g2 = parse_emg(_read_input(args.other))
    _guarded(g1, args.guard)
    _guarded(g2, args.guard)
    verdict = coloring.dominates(g1, g2)
    _write(f"dominates={int(verdict)}\n", args.out)
    return 0


def _cmd_classify(args) -> int:
    g = _load(args.input)
    w = analysis.recognize(g, args.catalog_bound, args.patch_bound)
    name = {
        "near_quad33": "NQ",
        "framed_patched_tw": "FPTW",
        "neither": "NEITHER",
    }[w.verdict]
    _write(f"verdict={name}\n", args.out)
    return 0


def _cmd_faces(args) -> int:
    g = _load(args.input)
    fl = trace_faces(g)
    stats = analysis.face_deficiency(g)
    lines = []
    for i, f in enumerate(fl.faces):
        tag = " hole" if i in fl.ring_faces else ""
        lines.append(f"face {len(f)} " + " ".join(map(str, f)) + tag)
    lines.append(f"def_int={stats.deficiency_internal}")
    lines.append(f"def_all={stats.deficiency_all}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_chain(args) -> int:
    g = _load(args.input)
    cd = surgery.chain_decompose(g)
    lines = [f"chain n={cd.n}"]
    for i, c in enumerate(cd.cutting_cycles):
        lines.append(f"cycle {i}: " + " ".join(map(str, c.vertices)))
    _write("\n".join(lines) + "\n", args.out)
    violations = surgery.audit_chain(g, cd)
    return 1 if violations else 0


def _cmd_identify(args) -> int:
    g = _load(args.input)
    face = tuple(int(t) for t in args.face.split(","))
    out = surgery.identify_across_face(g, face, args.diagonal)
    _write(emit_emg(out), args.out)
    return 0


def _cmd_contract_ladder(args) -> int:
    g = _load(args.input)
    q2 = tuple(int(t) for t in args.q2.split(","))
    q3 = tuple(int(t) for t in args.q3.split(","))
    out = surgery.ladder_contract(g, q2, q3)
    _write(emit_emg(out), args.out)
    return 0


def _cmd_cut(args) -> int:
    g = _load(args.input)
    out = surgery.cut_step(g, args.d0, guard=args.guard)
    _write(emit_emg(out), args.out)
    return 0


def _cmd_attach_ring(args) -> int:
    g = _load(args.input)
    out = families.attach_pendant_ring(g, args.vertex)
    _write(emit_emg(out), args.out)
    return 0


def _cmd_census(args) -> int:
    if args.family == "stdin":
        graphs = parse_emg_stream(_read_input(args.input))
    else:
        spec = families.FamilySpec(
            kind=_FAMILY_KINDS[args.family],
            max_vertices=args.max_vertices,
            patch_bound=args.patch_bound,
        )
        graphs = spec.realize()
    report = analysis.census(
        graphs,
        guard=args.guard,
        catalog_bound=args.catalog_bound,
        patch_bound=args.patch_bound,
        jobs=args.jobs,
    )
    _write("\n".join(report.lines()) + "\n", args.out)
    return 1 if report.has_flags else 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cylcolor",
        description="Exact 3-coloring toolkit for triangle-free graphs "
        "in the sphere, disk, and cylinder (EMG format in, EMG or text out).",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--in", dest="input", default=None, help="EMG input (default stdin)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--guard", type=int, default=22, help="brute-force vertex guard")

    sp = sub.add_parser("gen", help="generate a graph family as an EMG stream")
    sp.add_argument("--family", required=True, choices=[
        "thomas-walls", "reduced", "patches", "hexagon-disks", "quad33",
        "near-quad33", "framed-tw", "grid",
    ])
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--max-internal", type=int, default=2)
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--width", type=int, default=4)
    sp.add_argument("--layers", type=int, default=3)
    sp.add_argument("--out", default=None)
    sp.add_argument("--out-dir", default=None, help="write one EMG file per graph")
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("color", help="find a 3-coloring extending a precoloring")
    common(sp)
    sp.add_argument("--precolor", action="append", default=[], help="v=c pairs, comma separated")
    sp.set_defaults(func=_cmd_color)

    sp = sub.add_parser("count", help="count 3-colorings extending a precoloring")
    common(sp)
    sp.add_argument("--precolor", action="append", default=[])
    sp.set_defaults(func=_cmd_count)

    sp = sub.add_parser("extendset", help="list extendable ring precolorings")
    common(sp)
    sp.set_defaults(func=_cmd_extendset)

    sp = sub.add_parser("critical", help="test criticality relative to the rings")
    common(sp)
    sp.set_defaults(func=_cmd_critical)

    sp = sub.add_parser("dominates", help="does the first graph dominate the second")
    common(sp)
    sp.add_argument("--other", required=True, help="EMG path of the second graph")
    sp.set_defaults(func=_cmd_dominates)

    sp = sub.add_parser("classify", help="recognize the construction family")
    common(sp)
    sp.add_argument("--catalog-bound", type=int, default=20)
    sp.add_argument("--patch-bound", type=int, default=4)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("faces", help="list faces and face-length statistics")
    common(sp)
    sp.set_defaults(func=_cmd_faces)

    sp = sub.add_parser("chain", help="maximum chain decomposition")
    common(sp)
    sp.set_defaults(func=_cmd_chain)

    sp = sub.add_parser("identify", help="identify a diagonal across a 4-face")
    common(sp)
    sp.add_argument("--face", required=True, help="v1,v2,v3,v4")
    sp.add_argument("--diagonal", default="13", choices=["13", "24"])
    sp.set_defaults(func=_cmd_identify)

    sp = sub.add_parser("contract-ladder", help="contract the staircase between two layers")
    common(sp)
    sp.add_argument("--q2", required=True, help="comma separated layer cycle")
    sp.add_argument("--q3", required=True, help="comma separated layer cycle")
    sp.set_defaults(func=_cmd_contract_ladder)

    sp = sub.add_parser("cut", help="one cutting step (introduce a short cycle)")
    common(sp)
    sp.add_argument("--d0", type=int, required=True)
    sp.set_defaults(func=_cmd_cut)

    sp = sub.add_parser("attach-ring", help="attach a pendant 4-ring at a vertex")
    common(sp)
    sp.add_argument("--vertex", type=int, required=True)
    sp.set_defaults(func=_cmd_attach_ring)

    sp = sub.add_parser("census", help="classification census over a family")
    sp.add_argument("--family", required=True, choices=["quad33", "framed-tw", "stdin"])
    sp.add_argument("--in", dest="input", default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--guard", type=int, default=22)
    sp.add_argument("--catalog-bound", type=int, default=20)
    sp.add_argument("--patch-bound", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=_cmd_census)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EMGParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CylColorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
