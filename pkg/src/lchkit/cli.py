"""Command-line surface: front files in, deterministic JSON/SVG out.

Exit codes: 0 success, 1 domain errors (NotPlat, NotLRS, UnknownFace,
NoSignChange, ...), 2 for unreadable input (I/O, bad tokens, impossible
strand counts).  Subcommands other than ``resolve`` accept either a front
file or the JSON produced by ``resolve``, so pipelines can be staged.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import disks as disks_mod
from . import obstruction as obs_mod
from .errors import LchkitError, UnknownFaceError
from .frontdiagram import parse_front
from .resolution import (
    LagrangianDiagram,
    check_left_right_simple,
    diagram_from_json_dict,
    n_copy,
    resolve,
)

SCHEMA_VERSION = 1


def _load_diagram(path, require_plat=True) -> LagrangianDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return diagram_from_json_dict(json.loads(text))
    return resolve(parse_front(text), require_plat=require_plat)


def _emit(data, out):
    blob = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(blob)
    else:
        sys.stdout.write(blob)


def _word_str(word):
    return "1" if not word else "*".join(word)


# ----------------------------------------------------------------------
# subcommands

def _cmd_resolve(args):
    diagram = _load_diagram(args.input, require_plat=not args.no_require_plat)
    data = diagram.to_json_dict()
    data["euler_ok"] = diagram.euler_check()
    data["n_bounded_faces"] = diagram.n_bounded_faces
    _emit(data, args.out)
    return 0


def _cmd_chords(args):
    diagram = _load_diagram(args.input)
    table = disks_mod.grade_chords(diagram)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "n_chords": len(table.rows),
            "chords": [
                {
                    "name": r.name,
                    "crossing": r.crossing,
                    "grading": r.grading,
                    "modulus": r.modulus,
                    "components": list(r.components),
                }
                for r in table.rows
            ],
            "base_darts": [list(d) for d in table.base_darts],
        },
        args.out,
    )
    return 0


def _cmd_dga(args):
    diagram = _load_diagram(args.input)
    rigid = disks_mod.enumerate_rigid_disks(diagram)
    diff = disks_mod.dga_differential(
        diagram, rigid, t_markers=args.with_t_marker
    )
    table = disks_mod.grade_chords(diagram, rigid)
    gradings = {r.name: r for r in table.rows}
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "generators": [
                {
                    "name": g,
                    "grading": gradings[g].grading,
                    "modulus": gradings[g].modulus,
                    "components": list(gradings[g].components),
                }
                for g in diff.generators
            ],
            "differential": {g: [_word_str(w) for w in diff.words[g]] for g in diff.generators},
            "two_positive": [
                {
                    "positives": list(pair),
                    "words": [[_word_str(w1), _word_str(w2)] for w1, w2 in entries],
                }
                for pair, entries in diff.two_positive.items()
            ],
            "d_squared": "ok" if diff.d_squared_ok() else "fail",
            "disk_certificates": [_certificate(d) for d in rigid],
        },
        args.out,
    )
    return 0


def _certificate(disk):
    return {
        "faces": sorted(disk.faces),
        "corners": [
            {"chord": disks_mod.chord_name(c.crossing), "quadrant": c.quadrant, "sign": c.sign}
            for c in disk.corners
        ],
        "cap_touches": list(disk.cap_touches),
        "ind_u": disk.ind_u,
        "ind_U": disk.ind_U,
    }


def _cmd_disks(args):
    diagram = _load_diagram(args.input)
    rigid = disks_mod.enumerate_rigid_disks(diagram)
    data = {
        "schema_version": SCHEMA_VERSION,
        "n_disks": len(rigid),
        "disks": [_certificate(d) for d in rigid],
    }
    if args.certificates:
        for entry, disk in zip(data["disks"], rigid):
            entry["boundary_walk"] = [list(s) for s in disk.boundary_walk.steps]
            entry["lift"] = disks_mod.lift_boundary_labels(disk, diagram)
    _emit(data, args.out)
    return 0


def _cmd_census2(args):
    diagram = _load_diagram(args.input)
    census = disks_mod.index2_census(diagram)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "disk_candidates": [_certificate(d) for d in census["disk_candidates"]],
            "annulus_candidates": [
                {
                    "faces": sorted(a.faces),
                    "slit_arc": a.slit_arc,
                    "corners": [
                        {
                            "chord": disks_mod.chord_name(c.crossing),
                            "quadrant": c.quadrant,
                            "sign": c.sign,
                        }
                        for c in a.corners
                    ],
                    "cap_touches": list(a.cap_touches),
                    "ind_u": a.ind_u,
                    "ind_U": a.ind_U,
                }
                for a in census["annulus_candidates"]
            ],
        },
        args.out,
    )
    return 0


def _cmd_ncopy(args):
    diagram = _load_diagram(args.input)
    copied = n_copy(diagram, args.n)
    data = copied.to_json_dict()
    data["n_chords"] = len(copied.crossings)
    data["lrs"] = check_left_right_simple(copied)[0]
    _emit(data, args.out)
    return 0


def _cmd_obstruction(args):
    family = obs_mod.load_family(args.family)
    result = family.solve()
    result["schema_version"] = SCHEMA_VERSION
    _emit(result, args.out)
    return 0


def _cmd_render(args):
    diagram = _load_diagram(args.input)
    highlight = None
    if args.highlight is not None:
        highlight = frozenset(int(f) for f in args.highlight.split(","))
    svg = render(diagram, highlight=highlight)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


# ----------------------------------------------------------------------
# SVG rendering

_UNIT = 40.0
_PAD = 30.0


def _fmt(x):
    return f"{x:.2f}"


def render(diagram: LagrangianDiagram, highlight=None) -> str:
    """Deterministic SVG of the diagram on an integer slot/height grid.

    Crossings break the under (SW-NE) strand; caps are quadratic arcs within
    their slots.  ``highlight`` shades the cells and crossing quadrants of
    the given bounded faces.
    """
    if highlight:
        for fid in highlight:
            if not 0 <= fid < diagram.n_bounded_faces:
                raise UnknownFaceError(f"face {fid} not in 0..{diagram.n_bounded_faces - 1}")
    heights = [0]
    strand_cols = []  # strand count after each event
    count = 0
    for kind, _k in diagram.events:
        count += {"lcap": 2, "rcap": -2, "cross": 0}[kind]
        strand_cols.append(count)
        heights.append(count)
    max_h = max([2] + strand_cols)
    n_slots = len(diagram.events)
    width = _UNIT * (n_slots + 1) + 2 * _PAD
    height = _UNIT * (max_h + 1) + 2 * _PAD

    def pt(x, h):
        return (_PAD + _UNIT * x, _PAD + _UNIT * (max_h + 0.5 - h))

    shapes = []

    def line(x0, h0, x1, h1, cls="strand"):
        a, b = pt(x0, h0), pt(x1, h1)
        shapes.append(
            f'<line class="{cls}" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
            f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}"/>'
        )

    def cap_path(x_mouth, apex_x, k):
        a, b = pt(x_mouth, k), pt(x_mouth, k + 1)
        c = pt(apex_x, k + 0.5)
        shapes.append(
            f'<path class="strand" d="M {_fmt(a[0])} {_fmt(a[1])} '
            f'Q {_fmt(c[0])} {_fmt(c[1])} {_fmt(b[0])} {_fmt(b[1])}" fill="none"/>'
        )

    def poly(points, cls):
        coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (pt(x, h) for x, h in points))
        shapes.append(f'<polygon class="{cls}" points="{coords}"/>')

    # shaded cells of highlighted faces (drawn first, under the strands)
    if highlight:
        for face in diagram.faces:
            if face.fid not in highlight:
                continue
            for slot, gap in face.cells:
                n_after = strand_cols[slot - 1]
                if gap == 0 or gap >= n_after:
                    continue  # unbounded fringe
                poly(
                    [(slot, gap), (slot + 1, gap), (slot + 1, gap + 1), (slot, gap + 1)],
                    "shade",
                )
        for xc in diagram.crossings:
            i, k = xc.slot, xc.height
            center = (i - 0.5, k + 0.5)
            tri = {
                "W": [(i - 1, k), center, (i - 1, k + 1)],
                "E": [(i, k), center, (i, k + 1)],
                "N": [(i - 1, k + 1), center, (i, k + 1)],
                "S": [(i - 1, k), center, (i, k)],
            }
            for q, corners in tri.items():
                if xc.quadrant_face[q] in highlight:
                    poly(corners, "shade")

    # strands, column by column
    n_before = 0
    for slot0, (kind, k) in enumerate(diagram.events):
        i = slot0 + 1
        n_after = strand_cols[slot0]
        if kind == "cross":
            for j in range(1, n_before + 1):
                if j not in (k, k + 1):
                    line(i - 1, j, i, j)
            line(i - 1, k + 1, i, k)  # over strand, NW-SE
            line(i - 1, k, i - 0.65, k + 0.35)
            line(i - 0.35, k + 0.65, i, k + 1)
        elif kind == "lcap":
            for j in range(1, n_before + 1):
                if j < k:
                    line(i - 1, j, i, j)
                else:
                    line(i - 1, j, i, j + 2)
            cap_path(i, i - 0.85, k)
        else:  # rcap
            for j in range(1, n_before + 1):
                if j < k:
                    line(i - 1, j, i, j)
                elif j > k + 1:
                    line(i - 1, j, i, j - 2)
            cap_path(i - 1, i - 0.15, k)
        # horizontal continuation into the next column
        for j in range(1, n_after + 1):
            line(i, j, i + 1, j)
        n_before = n_after

    body = "\n".join(shapes)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        "<style>\n"
        ".strand { stroke: #1a1a1a; stroke-width: 2.5; fill: none; }\n"
        ".shade { fill: #7fb3d5; fill-opacity: 0.55; stroke: none; }\n"
        "</style>\n"
        f"{body}\n"
        "</svg>\n"
    )


# ----------------------------------------------------------------------
# entry point

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lchkit",
        description="Holomorphic-disk invariants of Legendrian links from front event words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="Lagrangian resolution of a front")
    p.add_argument("input")
    p.add_argument("--no-require-plat", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("chords", help="graded chord table")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_chords)

    p = sub.add_parser("dga", help="Z/2 differential with certificates")
    p.add_argument("input")
    p.add_argument("--with-t-marker", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_dga)

    p = sub.add_parser("disks", help="rigid disk enumeration")
    p.add_argument("input")
    p.add_argument("--certificates", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_disks)

    p = sub.add_parser("census2", help="index-2 disk and annulus candidates")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_census2)

    p = sub.add_parser("ncopy", help="n-copy construction")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_ncopy)

    p = sub.add_parser("obstruction", help="flat-annulus obstruction zero finding")
    p.add_argument("--family", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("render", help="SVG rendering")
    p.add_argument("input")
    p.add_argument("--highlight", help="comma-separated bounded face ids to shade")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LchkitError as exc:
        sys.stderr.write(
            json.dumps({"error": exc.name, "message": str(exc)}, sort_keys=True) + "\n"
        )
        return 2 if exc.kind == "input" else 1
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "IOError", "message": str(exc)}) + "\n")
        return 2
    except json.JSONDecodeError as exc:
        sys.stderr.write(json.dumps({"error": "SyntaxError", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
