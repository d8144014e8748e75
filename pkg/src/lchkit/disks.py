"""Rigid-disk enumeration, the Z/2 differential, chord gradings, boundary
lifts and the index-2 census, all on left-right-simple diagrams.

A candidate disk is a set of bounded faces.  At every crossing the set of
occupied quadrants must be empty, a single quadrant (a convex corner), two
adjacent quadrants (a smooth pass-through) or all four (an interior
crossing); three quadrants or two opposite ones are rejected.  Corner
signs: E and W quadrants are positive, N and S negative -- the quadrants
swept counterclockwise from an over-strand ray to an under-strand ray.
A boundary walk may only touch a cap from its inner-face side.

Rigid disks are exactly the subsets with chi = 1 passing these filters
with (#positive corners) + (#cap touches) = 2 and at least one positive
corner; two positive corners force every negative corner strictly between
them in x.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass

from .errors import (
    CalibrationFailureError,
    InconsistentLiftError,
    MapInconsistentError,
    NotLRSError,
)
from .resolution import (
    CORNER_ENDS,
    CW_NEXT,
    NE,
    NW,
    QUADRANT_CCW_FROM,
    QUADRANTS,
    SE,
    SW,
    BoundaryPath,
    LagrangianDiagram,
    check_left_right_simple,
)

POSITIVE_QUADRANTS = ("E", "W")
_ADJACENT_PAIRS = {
    frozenset(p) for p in (("N", "E"), ("E", "S"), ("S", "W"), ("W", "N"))
}


def classify_corner(crossing, quadrant: str) -> str:
    """Sign of a convex corner occupying the given quadrant."""
    if quadrant not in QUADRANTS:
        raise ValueError(f"unknown quadrant {quadrant!r}")
    return "+" if quadrant in POSITIVE_QUADRANTS else "-"


def chord_name(cid: int) -> str:
    return f"r{cid + 1}"


@dataclass(frozen=True)
class CornerRecord:
    crossing: int
    quadrant: str
    sign: str


@dataclass(frozen=True)
class DiskRegion:
    faces: frozenset
    boundary_walk: BoundaryPath  # closed, starts at the distinguished corner's out-dart
    corners: tuple  # CornerRecords, ccw from the distinguished positive corner
    cap_touches: tuple  # cap ids in walk order
    ind_u: int
    ind_U: int
    walk_corners: tuple = ()  # per-step corner (or None), aligned with the walk

    @property
    def positive_corners(self):
        return tuple(c for c in self.corners if c.sign == "+")

    @property
    def negative_corners(self):
        return tuple(c for c in self.corners if c.sign == "-")

    def key(self):
        return tuple(sorted(self.faces))


@dataclass(frozen=True)
class AnnulusCandidate:
    faces: frozenset
    slit_arc: int  # interior arc supporting the double-covered inner boundary
    corners: tuple
    cap_touches: tuple
    ind_u: int = 2
    ind_U: int = 2


# ----------------------------------------------------------------------
# region profiles

class _RegionProfile:
    """Boundary structure of one face subset: quadrant occupancies, walks,
    corners, cap touches and Euler characteristic."""

    __slots__ = ("faces", "valid", "reason", "chi", "circuits", "cap_touches", "n_circuits")

    def __init__(self, diagram, faces):
        self.faces = frozenset(faces)
        self.valid = True
        self.reason = None
        occupied = {}
        for xc in diagram.crossings:
            occ = frozenset(q for q in QUADRANTS if xc.quadrant_face[q] in self.faces)
            if not occ:
                continue
            occupied[xc.cid] = occ
            if len(occ) == 3 or (len(occ) == 2 and occ not in _ADJACENT_PAIRS):
                self._fail(f"crossing {xc.cid}: quadrants {sorted(occ)}")
                return

        boundary_darts = {}
        n_edges = 0
        cap_touches = []
        for arc in diagram.arcs:
            left_in = arc.face_left in self.faces
            right_in = arc.face_right in self.faces
            if left_in or right_in:
                n_edges += 1
            if left_in == right_in:
                continue
            direction = 1 if left_in else -1
            boundary_darts[(arc.aid, direction)] = True
            for cap_id, sign in arc.caps:
                if sign * direction < 0:
                    self._fail(f"cap {cap_id} touched from its outer side")
                    return
                cap_touches.append(cap_id)

        self.chi = len(occupied) - n_edges + len(self.faces)
        self.cap_touches = cap_touches

        # stitch boundary darts into circuits, recording corners
        circuits = []
        pending = dict(boundary_darts)
        while pending:
            start = min(pending)
            walk = []
            dart = start
            while True:
                if dart not in pending:
                    raise MapInconsistentError("region walk left its boundary darts")
                del pending[dart]
                cid, e = diagram.dart_head(dart)
                occ = occupied[cid]
                f1 = CW_NEXT[e]
                f2 = CW_NEXT[f1]
                q0 = QUADRANT_CCW_FROM[f1]
                q1 = QUADRANT_CCW_FROM[f2]
                if q0 not in occ:
                    raise MapInconsistentError("region walk lost its left face")
                corner = None
                if q1 not in occ:
                    exit_end = f1
                    corner = CornerRecord(cid, q0, classify_corner(diagram.crossings[cid], q0))
                else:
                    exit_end = f2  # smooth pass-through of a 2-adjacent crossing
                walk.append((dart, corner))
                dart = diagram.dart_from_end(cid, exit_end)
                if dart == start:
                    break
            circuits.append(walk)
        self.circuits = circuits
        self.n_circuits = len(circuits)

    def _fail(self, reason):
        self.valid = False
        self.reason = reason
        self.chi = None
        self.circuits = []
        self.cap_touches = []
        self.n_circuits = 0

    def corners(self):
        return [c for walk in self.circuits for _d, c in walk if c is not None]


def region_profile(diagram, faces):
    return _RegionProfile(diagram, faces)


def _disk_from_profile(diagram, prof):
    """Build the canonical DiskRegion from a single-circuit profile."""
    walk = prof.circuits[0]
    corner_slots = [i for i, (_d, c) in enumerate(walk) if c is not None]
    positives = [i for i in corner_slots if walk[i][1].sign == "+"]
    anchor = min(
        positives,
        key=lambda i: (diagram.crossings[walk[i][1].crossing].slot, walk[i][1].quadrant),
    )
    # start the stored walk just after the distinguished positive corner
    rotated = walk[anchor + 1 :] + walk[: anchor + 1]
    inner_corners = [c for _d, c in rotated if c is not None]
    assert inner_corners[-1] is walk[anchor][1]
    corners = [walk[anchor][1]] + inner_corners[:-1]
    caps = []
    for dart, _c in rotated:
        caps.extend(c for c, _s in diagram.arcs[dart[0]].caps)
    n_pos = sum(1 for c in corners if c.sign == "+")
    ind_u = -2 + len(caps) + n_pos
    return DiskRegion(
        faces=prof.faces,
        boundary_walk=BoundaryPath(tuple(d for d, _c in rotated), closed=True),
        corners=tuple(corners),
        cap_touches=tuple(caps),
        ind_u=ind_u,
        ind_U=ind_u + 1,
        walk_corners=tuple(c for _d, c in rotated),
    )


def boundary_components(diagram, region: DiskRegion):
    """Split the closed boundary walk at its corners.

    Returns (path, start_sign, end_sign) per smooth piece; a cornerless
    walk comes back whole with None signs."""
    steps = region.boundary_walk.steps
    if not any(region.walk_corners):
        return [(BoundaryPath(steps, closed=True), None, None)]
    out = []
    prev_sign = region.corners[0].sign
    current = []
    for step, corner in zip(steps, region.walk_corners):
        current.append(step)
        if corner is not None:
            out.append((BoundaryPath(tuple(current)), prev_sign, corner.sign))
            prev_sign = corner.sign
            current = []
    if current:
        raise MapInconsistentError("boundary walk does not end at its anchor corner")
    return out


def _x_separation_ok(diagram, corners):
    """Two positive corners must bracket every negative corner in x."""
    pos = [c for c in corners if c.sign == "+"]
    if len(pos) != 2:
        return True
    lo, hi = sorted(diagram.crossings[c.crossing].slot for c in pos)
    return all(
        lo < diagram.crossings[c.crossing].slot < hi
        for c in corners
        if c.sign == "-"
    )


# ----------------------------------------------------------------------
# connected-subset enumeration with commit pruning

def _face_adjacency(diagram):
    adj = [set() for _ in range(diagram.n_bounded_faces)]
    for arc in diagram.arcs:
        l, r = arc.face_left, arc.face_right
        if l >= 0 and r >= 0 and l != r:
            adj[l].add(r)
            adj[r].add(l)
    return [sorted(a) for a in adj]


class _CommitPruner:
    """Sound pruning over partially decided subsets.

    A crossing or cap is committed once all its incident faces are decided
    (in the subset, excluded, or unbounded).  Committed violations can
    never be repaired by adding faces, so the branch dies.
    """

    def __init__(self, diagram, budget):
        self.diagram = diagram
        self.budget = budget

    def __call__(self, included, excluded):
        diagram = self.diagram
        committed_weight = 0
        committed_pos = []
        for xc in diagram.crossings:
            occ, undecided = 0, 0
            for q in QUADRANTS:
                f = xc.quadrant_face[q]
                if f in included:
                    occ += 1
                elif f >= 0 and f not in excluded:
                    undecided += 1
            if undecided:
                continue
            quads = frozenset(q for q in QUADRANTS if xc.quadrant_face[q] in included)
            if len(quads) == 3 or (len(quads) == 2 and quads not in _ADJACENT_PAIRS):
                return True
            if len(quads) == 1:
                q = next(iter(quads))
                if q in POSITIVE_QUADRANTS:
                    committed_weight += 1
                    committed_pos.append(xc)
        for cap in diagram.caps:
            arc = diagram.arcs[cap.host_arc]
            sides = (arc.face_left, arc.face_right)
            if any(f >= 0 and f not in included and f not in excluded for f in sides):
                continue
            inner = cap.inner_face
            outer = sides[0] if sides[1] == inner else sides[1]
            if outer in included and inner not in included:
                return True
            if (inner in included) != (outer in included):
                committed_weight += 1
        if committed_weight > self.budget:
            return True
        if len(committed_pos) == 2 and self.budget == 2:
            lo, hi = sorted(x.slot for x in committed_pos)
            for xc in self.diagram.crossings:
                quads = frozenset(q for q in QUADRANTS if xc.quadrant_face[q] in included)
                if len(quads) == 1 and next(iter(quads)) not in POSITIVE_QUADRANTS:
                    decided = all(
                        f < 0 or f in included or f in excluded
                        for f in (xc.quadrant_face[q] for q in QUADRANTS)
                    )
                    if decided and not lo < xc.slot < hi:
                        return True
        return False


def _enumerate_from_seed(adj, seed, visit, prune):
    """Connected subsets whose minimum face is ``seed``, each exactly once."""

    def rec(subset, frontier, excluded):
        visit(subset)
        ext_excluded = set(excluded)
        for i, f in enumerate(frontier):
            new_subset = subset | {f}
            if not prune(new_subset, ext_excluded):
                new_frontier = list(frontier[i + 1 :])
                known = set(new_frontier) | new_subset | ext_excluded
                for g in adj[f]:
                    if g > seed and g not in known:
                        new_frontier.append(g)
                        known.add(g)
                rec(new_subset, new_frontier, ext_excluded)
            ext_excluded = ext_excluded | {f}

    excluded = set(range(seed))
    if not prune(frozenset([seed]), excluded):
        rec(frozenset([seed]), [g for g in adj[seed] if g > seed], excluded)


def _threads():
    try:
        return max(1, int(os.environ.get("LCHKIT_THREADS", "1")))
    except ValueError:
        return 1


def _collect_regions(diagram, budget):
    """All face subsets passing the quadrant, cap-side and chi = 1 filters
    with (#positive corners) + (#cap touches) == budget, >= 1 positive."""
    adj = _face_adjacency(diagram)
    n = diagram.n_bounded_faces
    pruner = _CommitPruner(diagram, budget)

    def run_seed(seed):
        local = {}

        def visit(subset):
            prof = region_profile(diagram, subset)
            if not prof.valid or prof.chi != 1 or prof.n_circuits != 1:
                return
            corners = prof.corners()
            n_pos = sum(1 for c in corners if c.sign == "+")
            if n_pos + len(prof.cap_touches) != budget or n_pos < 1:
                return
            if budget == 2 and not _x_separation_ok(diagram, corners):
                return
            disk = _disk_from_profile(diagram, prof)
            local[disk.key()] = disk

        _enumerate_from_seed(adj, seed, visit, pruner)
        return local

    out = {}
    n_threads = _threads()
    if n_threads <= 1 or n <= 1:
        for seed in range(n):
            out.update(run_seed(seed))
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            for local in pool.map(run_seed, range(n)):
                out.update(local)
    return [out[k] for k in sorted(out)]


def enumerate_rigid_disks(diagram: LagrangianDiagram):
    """Every embedded rigid disk (ind_U = 1): one positive corner plus one
    cap touch, or two positive corners, all corners convex.  Deterministic
    order by sorted face set."""
    ok, witnesses = check_left_right_simple(diagram)
    if not ok:
        raise NotLRSError(f"diagram is not left-right-simple at {witnesses}")
    return _collect_regions(diagram, budget=2)


# ----------------------------------------------------------------------
# differential

@dataclass
class Differential:
    """Z/2 differential data: for each chord the list of boundary words of
    its one-positive rigid disks (duplicates meaningful, coefficients in
    Z/2), plus the separate two-positive census."""

    generators: tuple  # chord names in x-order
    words: dict  # chord name -> list of tuples of chord names
    two_positive: dict  # (name, name) -> list of (word_after_first, word_after_second)

    def reduced(self):
        """Words with even multiplicity cancelled."""
        out = {}
        for g, ws in self.words.items():
            counts = Counter(ws)
            out[g] = sorted(w for w, c in counts.items() if c % 2)
        return out

    def apply(self, word):
        """Leibniz expansion of the differential of a word, as a Counter.
        Letters that are not generators (base-point markers) are cycles."""
        result = Counter()
        for i, letter in enumerate(word):
            for w in self.words.get(letter, ()):
                result[word[:i] + w + word[i + 1 :]] += 1
        return result

    def d_squared_ok(self):
        for g in self.generators:
            total = Counter()
            for w in self.words[g]:
                total.update(self.apply(w))
            if any(c % 2 for c in total.values()):
                return False
        return True


def _marked_word(diagram, disk, base_arcs):
    """Word of a one-positive disk with base-point markers interleaved at
    their positions along the walk; the final anchor corner is dropped."""
    letters = []
    for step, corner in zip(disk.boundary_walk.steps, disk.walk_corners):
        aid, direction = step
        if aid in base_arcs:
            comp, base_dir = base_arcs[aid]
            letters.append(f"t{comp}" if direction == base_dir else f"~t{comp}")
        if corner is not None and corner is not disk.corners[0]:
            letters.append(chord_name(corner.crossing))
    return tuple(letters)


def dga_differential(diagram: LagrangianDiagram, disks=None, t_markers=False) -> Differential:
    """Differential of the Z/2 DGA: for each chord a, the words of negative
    corners of one-positive rigid disks with positive corner at a, read
    counterclockwise starting after the positive corner.  Two-positive
    disks are reported separately and never folded into the differential.

    With ``t_markers`` each component's base dart becomes a base point and
    words pick up a marker letter whenever the boundary crosses it."""
    if disks is None:
        disks = enumerate_rigid_disks(diagram)
    base_arcs = {}
    if t_markers:
        base_arcs = {
            aid: (comp, direction)
            for comp, (aid, direction) in enumerate(diagram.base_darts)
        }
    words = {chord_name(x.cid): [] for x in diagram.crossings}
    two_positive = {}
    for disk in disks:
        pos = disk.positive_corners
        if len(pos) == 1:
            if t_markers:
                word = _marked_word(diagram, disk, base_arcs)
            else:
                word = tuple(chord_name(c.crossing) for c in disk.corners[1:])
            words[chord_name(pos[0].crossing)].append(word)
        else:
            names = tuple(chord_name(c.crossing) for c in pos)
            after_first, after_second, seen_second = [], [], False
            for c in disk.corners[1:]:
                if c.sign == "+":
                    seen_second = True
                    continue
                (after_second if seen_second else after_first).append(chord_name(c.crossing))
            two_positive.setdefault(names, []).append(
                (tuple(after_first), tuple(after_second))
            )
    for g in words:
        words[g] = sorted(words[g])
    return Differential(
        generators=tuple(chord_name(x.cid) for x in diagram.crossings),
        words=words,
        two_positive={k: sorted(v) for k, v in sorted(two_positive.items())},
    )


# ----------------------------------------------------------------------
# gradings

@dataclass(frozen=True)
class ChordRow:
    name: str
    crossing: int
    grading: int
    modulus: int  # 0 means Z-valued
    components: tuple  # (under component, over component)


@dataclass(frozen=True)
class ChordTable:
    rows: tuple
    base_darts: tuple  # declared base dart per link component

    def grading(self, name):
        return next(r.grading for r in self.rows if r.name == name)

    def by_name(self):
        return {r.name: r for r in self.rows}


def _raw_gradings(diagram):
    """Integer gradings from capping-path rotation: the tangent of the
    component traversal at the under passage minus the tangent at the over
    passage, in pi/4 units, via g = (tau_u - tau_o - 2) / 4.

    For pure chords this equals rotation/pi - 1/2 along the path that runs
    from the over endpoint of the chord to its under endpoint following the
    link; mixed chords are graded relative to the per-component base darts
    with zero offsets.
    """
    out = {}
    for xc in diagram.crossings:
        rec = diagram.passage_tangents.get(xc.cid, {})
        if set(rec) != {"over", "under"}:
            raise CalibrationFailureError(f"crossing {xc.cid}: missing passage tangents")
        diff = rec["under"] - rec["over"] - 2
        if diff % 4:
            raise CalibrationFailureError(
                f"crossing {xc.cid}: capping rotation {diff} units not divisible by 4"
            )
        out[xc.cid] = diff // 4
    return out


def grade_chords(diagram: LagrangianDiagram, disks=None) -> ChordTable:
    """Chord gradings, verified against the degree identity
    |a| - sum |b_i| = 1 on every one-positive rigid disk.

    Pure chords of a component with rot != 0 are reduced mod 2|rot| into
    [0, 2|rot|); mixed chord gradings are Z-valued relative to the declared
    base darts, which are exposed in the table."""
    ok, witnesses = check_left_right_simple(diagram)
    if not ok:
        raise NotLRSError(f"diagram is not left-right-simple at {witnesses}")
    raw = _raw_gradings(diagram)
    if disks is None:
        disks = enumerate_rigid_disks(diagram)
    for disk in disks:
        if len(disk.positive_corners) != 1:
            continue
        a = disk.corners[0].crossing
        total = raw[a] - sum(raw[c.crossing] for c in disk.corners[1:])
        if total != 1:
            raise CalibrationFailureError(
                f"degree identity fails on disk {sorted(disk.faces)}: "
                f"|r{a + 1}| - sum = {total}"
            )
    rows = []
    for xc in diagram.crossings:
        g = raw[xc.cid]
        modulus = 0
        if xc.over_component == xc.under_component:
            rot = diagram.component_rot[xc.over_component]
            if rot != 0:
                modulus = 2 * abs(rot)
                g %= modulus
        rows.append(
            ChordRow(
                name=chord_name(xc.cid),
                crossing=xc.cid,
                grading=g,
                modulus=modulus,
                components=(xc.under_component, xc.over_component),
            )
        )
    return ChordTable(rows=tuple(rows), base_darts=tuple(diagram.base_darts))


def grading_via_path(diagram, cid, prefer_exit=SE):
    """Grading of a pure chord from an explicit capping path: follow the
    link from the chosen over-strand exit until the crossing is re-entered
    along the under strand.  Used to cross-check path independence."""
    xc = diagram.crossings[cid]
    dart = diagram.dart_from_end(cid, prefer_exit)
    theta = 0
    guard = 0
    while True:
        guard += 1
        if guard > 4 * len(diagram.arcs) + 4:
            raise CalibrationFailureError(f"capping path from crossing {cid} does not close")
        aid, direction = dart
        theta += direction * diagram.arcs[aid].winding
        head_c, head_e = diagram.dart_head(dart)
        if head_c == cid and head_e in (NE, SW):
            break
        dart = diagram._straight_next(dart)
    # exit tangent vs entry tangent offsets cancel: theta is the full
    # rotation of the over-to-under path; grading = theta/pi - 1/2
    if (theta - 2) % 4:
        raise CalibrationFailureError(f"capping rotation {theta} not in pi/2 + pi Z")
    return (theta - 2) // 4


# ----------------------------------------------------------------------
# boundary lifts and energy words

def lift_boundary_labels(region: DiskRegion, diagram: LagrangianDiagram):
    """Sheet labels along the boundary walk: at a positive corner the walk
    jumps from the under sheet (BOTTOM) to the over sheet (TOP), at a
    negative corner from TOP to BOTTOM, and stays on its strand elsewhere.
    Returns per-corner labels and the formal energy word."""
    if not region.faces:
        raise ValueError("constant disks at a double point are excluded")
    corner_labels = []
    for corner in region.corners:
        in_end, out_end = CORNER_ENDS[corner.quadrant]
        in_sheet = "BOTTOM" if in_end in (NE, SW) else "TOP"
        out_sheet = "TOP" if out_end in (NW, SE) else "BOTTOM"
        expected = ("BOTTOM", "TOP") if corner.sign == "+" else ("TOP", "BOTTOM")
        if (in_sheet, out_sheet) != expected:
            raise InconsistentLiftError(
                f"corner at crossing {corner.crossing}: sheets {(in_sheet, out_sheet)} "
                f"do not match sign {corner.sign}"
            )
        corner_labels.append(
            {
                "chord": chord_name(corner.crossing),
                "sign": corner.sign,
                "in_sheet": in_sheet,
                "out_sheet": out_sheet,
            }
        )
    energy = {
        "positive": [chord_name(c.crossing) for c in region.positive_corners],
        "negative": [chord_name(c.crossing) for c in region.negative_corners],
    }
    return {"corners": corner_labels, "energy_word": energy}


# ----------------------------------------------------------------------
# index-2 census

def index2_census(diagram: LagrangianDiagram):
    """Combinatorial supports of would-be index-2 curves.

    Disk candidates: chi = 1 subsets, all corners convex, with
    (#positive corners) + (#cap touches) = 3; the boundary branch point of
    the actual curve is not modeled.  Annulus candidates: a rigid-disk
    region together with an interior slit arc (both sides inside, no cap on
    the arc) whose double cover is the puncture-free inner boundary."""
    ok, witnesses = check_left_right_simple(diagram)
    if not ok:
        raise NotLRSError(f"diagram is not left-right-simple at {witnesses}")
    disk_candidates = _collect_regions(diagram, budget=3)
    annulus_candidates = []
    for region in _collect_regions(diagram, budget=2):
        for arc in diagram.arcs:
            if arc.face_left in region.faces and arc.face_right in region.faces:
                if arc.caps:
                    continue
                annulus_candidates.append(
                    AnnulusCandidate(
                        faces=region.faces,
                        slit_arc=arc.aid,
                        corners=region.corners,
                        cap_touches=region.cap_touches,
                    )
                )
    annulus_candidates.sort(key=lambda a: (tuple(sorted(a.faces)), a.slit_arc))
    return {"disk_candidates": disk_candidates, "annulus_candidates": annulus_candidates}
