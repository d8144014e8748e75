"""Lagrangian resolutions of fronts as combinatorial planar maps.

Local conventions, fixed once and used everywhere:

* Crossings are drawn as "X"s with the over-strand running NW-SE (it is the
  strand of greater t-value).  The four arc-ends at a crossing are tagged
  NE, NW, SW, SE; their counterclockwise cyclic order is (NE, NW, SW, SE).
* All tangent angles are integer multiples of pi/4, stored as plain ints
  ("units").  Strand runs between events are horizontal, crossing rays sit
  at odd units, and a cap bends the tangent by +-4 units (+pi when the
  traversal turns counterclockwise through the cap).
* A left cap's inner face is the face east of its bend, between the two
  mouth strands; a right cap's inner face is the face west of its bend.
  Traversing a cap in its +pi direction keeps the inner face on the left.

Faces are computed twice: by sweeping cells with a union-find (face
identity, cap sides, rendering) and by tracing the rotation system (the
boundary walks).  The two computations must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DisconnectedPathError,
    MapInconsistentError,
    NotLRSError,
    NotPlatError,
)
from .frontdiagram import FrontDiagram

NE, NW, SW, SE = "NE", "NW", "SW", "SE"
ENDS_CCW = (NE, NW, SW, SE)
OPPOSITE_END = {NE: SW, SW: NE, NW: SE, SE: NW}
EXIT_TANGENT = {NE: 1, NW: 3, SW: 5, SE: 7}  # units, heading away from the crossing
CW_NEXT = {NE: SE, SE: SW, SW: NW, NW: NE}
CCW_NEXT = {v: k for k, v in CW_NEXT.items()}
# quadrant between end e and its ccw neighbour; also the face on the left
# of a dart departing the crossing via e
QUADRANT_CCW_FROM = {SE: "E", NE: "N", NW: "W", SW: "S"}
QUADRANTS = ("N", "E", "S", "W")
# quadrant -> (entering end, exiting end) of a boundary walk cornering there
CORNER_ENDS = {"E": (NE, SE), "N": (NW, NE), "W": (SW, NW), "S": (SE, SW)}


@dataclass
class Crossing:
    cid: int
    slot: int
    height: int  # lower strand height at the slot
    ends: dict = field(default_factory=dict)  # end tag -> (arc_id, 0|1)
    quadrant_face: dict = field(default_factory=dict)  # quadrant -> face id
    over_component: int = -1
    under_component: int = -1

    def __repr__(self):
        return f"x{self.cid}"


@dataclass
class Cap:
    cap_id: int
    side: str  # "L" or "R"
    slot: int
    height: int
    host_arc: int = -1
    inner_face: int = -2

    def __repr__(self):
        return f"{self.side.lower()}cap{self.cap_id}"


@dataclass
class Arc:
    """Directed arc between two crossing ends (canonical direction a -> b).

    ``winding`` is the total tangent rotation from the a-ray to the b-ray in
    pi/4 units, including the +-4 contribution of every cap on the arc.
    ``caps`` lists (cap_id, sign), sign +1 when a -> b traverses the cap
    counterclockwise.
    """

    aid: int
    end_a: tuple  # (crossing id, end tag)
    end_b: tuple
    winding: int
    caps: tuple
    face_left: int = -2  # face on the left when traversed a -> b
    face_right: int = -2
    component: int = -1


@dataclass
class Face:
    fid: int  # -1 for the unbounded face
    bounded: bool
    walks: list  # one or more cyclic dart lists [(arc_id, dir), ...]
    quadrants: list  # (crossing id, quadrant) corners of this face
    caps: list  # cap ids on the boundary
    cells: list  # (column, gap) strips for rendering


@dataclass
class BoundaryPath:
    """Path in the diagram: consecutive (arc_id, +1|-1) steps, smooth at
    every crossing it passes through (straight-through continuation)."""

    steps: tuple
    closed: bool = False


class _Chain:
    """Arc under construction during the left-to-right sweep.

    Ends are anchors ``(crossing_id, end_tag)`` or ``None`` while that side
    is still an open strand tip; the winding is measured from end a to end
    b with open tips normalized to horizontal tangent.
    """

    __slots__ = ("anchor_a", "anchor_b", "w", "caps")

    def __init__(self):
        self.anchor_a = None
        self.anchor_b = None
        self.w = 0
        self.caps = []

    def reverse(self):
        self.anchor_a, self.anchor_b = self.anchor_b, self.anchor_a
        self.w = -self.w
        self.caps = [(cap, -sign) for cap, sign in reversed(self.caps)]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def make(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


class LagrangianDiagram:
    """Planar combinatorial map built from a resolved event word.

    The event word uses ("lcap", k), ("rcap", k) and ("cross", k) entries,
    one per x-slot, k being the lower of the two strand heights involved.
    All values are immutable after construction.
    """

    def __init__(self, events, source_front=None):
        self.events = tuple(events)
        self.source_front = source_front
        self._build()
        self._trace_faces()
        self._trace_components()

    # ------------------------------------------------------------------
    # sweep construction

    def _build(self):
        crossings, caps, arcs = [], [], []
        chains = []
        live = []  # per height: (chain_id, end 0|1)
        uf = _UnionFind()
        OUTER = -1
        uf.make(OUTER)
        next_region = [0]
        gaps = [OUTER]  # region ids, one per gap bottom to top
        cells = []
        cap_inner_region = {}

        def new_region():
            r = next_region[0]
            next_region[0] += 1
            uf.make(r)
            return r

        def finalize(chain_id):
            ch = chains[chain_id]
            aid = len(arcs)
            arc = Arc(
                aid=aid,
                end_a=ch.anchor_a,
                end_b=ch.anchor_b,
                winding=ch.w,
                caps=tuple(ch.caps),
            )
            arcs.append(arc)
            crossings[ch.anchor_a[0]].ends[ch.anchor_a[1]] = (aid, 0)
            crossings[ch.anchor_b[0]].ends[ch.anchor_b[1]] = (aid, 1)
            for cap_id, _sign in ch.caps:
                caps[cap_id].host_arc = aid
            chains[chain_id] = None

        def point_live_to_b(h):
            """Reverse the chain at height h if needed so live[h] is end 1."""
            chain_id, which = live[h]
            if which == 0:
                chains[chain_id].reverse()
                for h2 in range(len(live)):
                    if live[h2][0] == chain_id:
                        live[h2] = (chain_id, 1 - live[h2][1])
            return chain_id

        def anchor(h, crossing_id, end_tag, turn):
            chain_id = point_live_to_b(h)
            ch = chains[chain_id]
            ch.anchor_b = (crossing_id, end_tag)
            ch.w += turn
            if ch.anchor_a is not None:
                finalize(chain_id)

        for slot0, (kind, k) in enumerate(self.events):
            slot = slot0 + 1
            n = len(live)
            if kind == "lcap":
                if not 1 <= k <= n + 1:
                    raise MapInconsistentError(f"slot {slot}: lcap at {k} with {n} strands")
                cap = Cap(cap_id=len(caps), side="L", slot=slot, height=k)
                caps.append(cap)
                ch = _Chain()
                ch.w = 4  # a = upper mouth tip, b = lower; top-to-bottom is ccw
                ch.caps = [(cap.cap_id, 1)]
                chain_id = len(chains)
                chains.append(ch)
                live[k - 1 : k - 1] = [(chain_id, 1), (chain_id, 0)]
                mouth = new_region()
                cap_inner_region[cap.cap_id] = mouth
                outside = gaps[k - 1]  # flows both under and over the new cap
                gaps[k - 1 : k] = [outside, mouth, outside]
            elif kind == "cross":
                if not 1 <= k <= n - 1:
                    raise MapInconsistentError(f"slot {slot}: cross at {k} with {n} strands")
                xc = Crossing(cid=len(crossings), slot=slot, height=k)
                crossings.append(xc)
                anchor(k - 1, xc.cid, SW, +1)
                anchor(k, xc.cid, NW, -1)
                under = _Chain()
                under.anchor_a = (xc.cid, NE)
                under.w = -1
                over = _Chain()
                over.anchor_a = (xc.cid, SE)
                over.w = +1
                under_id, over_id = len(chains), len(chains) + 1
                chains.extend([under, over])
                live[k - 1] = (over_id, 1)
                live[k] = (under_id, 1)
                east = new_region()
                xc.quadrant_face = {
                    "W": gaps[k],
                    "E": east,
                    "N": gaps[k + 1],
                    "S": gaps[k - 1],
                }
                gaps[k] = east
            elif kind == "rcap":
                if not 1 <= k <= n - 1:
                    raise MapInconsistentError(f"slot {slot}: rcap at {k} with {n} strands")
                cap = Cap(cap_id=len(caps), side="R", slot=slot, height=k)
                caps.append(cap)
                lo_id = point_live_to_b(k - 1)
                hi_id = point_live_to_b(k)
                if lo_id == hi_id:
                    raise MapInconsistentError(f"slot {slot}: rcap closes a crossing-free loop")
                lo, hi = chains[lo_id], chains[hi_id]
                fused = _Chain()
                fused.anchor_a = lo.anchor_a
                fused.anchor_b = hi.anchor_a
                fused.w = lo.w + 4 - hi.w
                fused.caps = (
                    list(lo.caps)
                    + [(cap.cap_id, 1)]
                    + [(c, -s) for c, s in reversed(hi.caps)]
                )
                fused_id = len(chains)
                chains.append(fused)
                del live[k - 1 : k + 1]
                for h2 in range(len(live)):
                    cid2, w2 = live[h2]
                    if cid2 == lo_id:
                        live[h2] = (fused_id, 0)
                    elif cid2 == hi_id:
                        live[h2] = (fused_id, 1)
                chains[lo_id] = None
                chains[hi_id] = None
                cap_inner_region[cap.cap_id] = gaps[k]
                uf.union(gaps[k - 1], gaps[k + 1])
                gaps[k - 1 : k + 2] = [gaps[k - 1]]
                if fused.anchor_a is not None and fused.anchor_b is not None:
                    finalize(fused_id)
            else:
                raise MapInconsistentError(f"slot {slot}: unknown event kind {kind!r}")
            uf.union(gaps[0], OUTER)
            uf.union(gaps[-1], OUTER)
            for j, region in enumerate(gaps):
                cells.append((slot, j, region))

        if live:
            raise MapInconsistentError(f"{len(live)} strands left open after the sweep")
        if any(ch is not None for ch in chains):
            raise MapInconsistentError("unfinalized chains left after the sweep")

        bounded_roots = []
        seen = set()
        for r in range(next_region[0]):
            root = uf.find(r)
            if root == uf.find(OUTER) or root in seen:
                continue
            seen.add(root)
            bounded_roots.append(root)
        face_of_root = {root: i for i, root in enumerate(bounded_roots)}
        face_of_root[uf.find(OUTER)] = -1

        def face_of(region):
            return face_of_root[uf.find(region)]

        for xc in crossings:
            xc.quadrant_face = {q: face_of(r) for q, r in xc.quadrant_face.items()}
        for cap in caps:
            cap.inner_face = face_of(cap_inner_region[cap.cap_id])

        self.crossings = crossings
        self.caps = caps
        self.arcs = arcs
        self.n_bounded_faces = len(bounded_roots)
        self._cells = [(slot, gap, face_of(r)) for slot, gap, r in cells]

        # arc side faces from the departure flanks; both ends must agree
        for arc in arcs:
            ca, ea = arc.end_a
            cb, eb = arc.end_b
            left_a = crossings[ca].quadrant_face[QUADRANT_CCW_FROM[ea]]
            right_a = crossings[ca].quadrant_face[QUADRANT_CCW_FROM[CW_NEXT[ea]]]
            left_b = crossings[cb].quadrant_face[QUADRANT_CCW_FROM[CW_NEXT[eb]]]
            right_b = crossings[cb].quadrant_face[QUADRANT_CCW_FROM[eb]]
            if (left_a, right_a) != (left_b, right_b):
                raise MapInconsistentError(
                    f"arc {arc.aid}: side faces disagree between endpoints"
                )
            arc.face_left, arc.face_right = left_a, right_a
            for cap_id, sign in arc.caps:
                inner = caps[cap_id].inner_face
                expected = left_a if sign > 0 else right_a
                if inner != expected:
                    raise MapInconsistentError(
                        f"cap {cap_id}: inner face {inner} is not on the ccw side {expected}"
                    )

    # ------------------------------------------------------------------
    # rotation-system face tracing

    def dart_head(self, dart):
        aid, direction = dart
        arc = self.arcs[aid]
        return arc.end_b if direction > 0 else arc.end_a

    def dart_tail(self, dart):
        aid, direction = dart
        arc = self.arcs[aid]
        return arc.end_a if direction > 0 else arc.end_b

    def dart_from_end(self, cid, end_tag):
        aid, which = self.crossings[cid].ends[end_tag]
        return (aid, 1 if which == 0 else -1)

    def _next_face_dart(self, dart):
        cid, e = self.dart_head(dart)
        return self.dart_from_end(cid, CW_NEXT[e])

    def _trace_faces(self):
        all_darts = [(a.aid, 1) for a in self.arcs] + [(a.aid, -1) for a in self.arcs]
        pending = set(all_darts)
        orbits = []
        for dart in all_darts:
            if dart not in pending:
                continue
            orbit = []
            d = dart
            while True:
                if d not in pending:
                    raise MapInconsistentError("face tracing revisited a consumed dart")
                pending.discard(d)
                orbit.append(d)
                d = self._next_face_dart(d)
                if d == dart:
                    break
            orbits.append(orbit)

        faces = {}
        for orbit in orbits:
            fids = set()
            quadrants = []
            for d in orbit:
                cid, e = self.dart_head(d)
                q = QUADRANT_CCW_FROM[CW_NEXT[e]]
                fids.add(self.crossings[cid].quadrant_face[q])
                quadrants.append((cid, q))
            if len(fids) != 1:
                raise MapInconsistentError(f"face orbit spans cell faces {sorted(fids)}")
            fid = fids.pop()
            face = faces.setdefault(
                fid,
                Face(fid=fid, bounded=fid >= 0, walks=[], quadrants=[], caps=[], cells=[]),
            )
            face.walks.append(orbit)
            face.quadrants.extend(quadrants)
            for d in orbit:
                arc = self.arcs[d[0]]
                face.caps.extend(c for c, _s in arc.caps)

        expected = set(range(self.n_bounded_faces)) | ({-1} if self.arcs else set())
        if set(faces) != expected:
            raise MapInconsistentError(
                f"traced faces {sorted(faces)} != cell faces {sorted(expected)}"
            )
        for slot, gap, fid in self._cells:
            if fid >= 0:
                faces[fid].cells.append((slot, gap))
        self.faces = [faces[i] for i in range(self.n_bounded_faces)]
        self.unbounded_face = faces.get(-1)

    # ------------------------------------------------------------------
    # link components, orientations, passage tangents

    def _straight_next(self, dart):
        cid, e = self.dart_head(dart)
        return self.dart_from_end(cid, OPPOSITE_END[e])

    def _trace_components(self):
        comp_of_arc = {}
        comp = 0
        tangents = {}  # crossing id -> {"over": units, "under": units}
        base_darts = []
        rot = []
        for arc in self.arcs:
            if arc.aid in comp_of_arc:
                continue
            cycle = []
            d = (arc.aid, 1)
            while True:
                cycle.append(d)
                comp_of_arc[d[0]] = comp
                d = self._straight_next(d)
                if d == (arc.aid, 1):
                    break
            # orient so the leftmost left cap is traversed bottom to top (-pi)
            left_caps = [
                (self.caps[c].slot, idx, s * dd)
                for idx, (aid, dd) in enumerate(cycle)
                for c, s in self.arcs[aid].caps
                if self.caps[c].side == "L"
            ]
            if left_caps:
                _slot, _idx, travel_sign = min(left_caps)
                if travel_sign > 0:
                    cycle = [(aid, -dd) for aid, dd in reversed(cycle)]
            start_cid, start_end = self.dart_tail(cycle[0])
            tau = EXIT_TANGENT[start_end]
            tau0 = tau
            for aid, dd in cycle:
                tau += dd * self.arcs[aid].winding
                cid, e = self.dart_head((aid, dd))
                rec = tangents.setdefault(cid, {})
                rec["over" if e in (NW, SE) else "under"] = tau
            if (tau - tau0) % 8:
                raise MapInconsistentError(f"component {comp}: winding {tau - tau0} not in 2pi Z")
            rot.append((tau - tau0) // 8)
            base_darts.append(cycle[0])
            comp += 1
        self.n_components = comp
        self.component_rot = rot
        self.base_darts = base_darts
        self.passage_tangents = tangents
        for arc in self.arcs:
            arc.component = comp_of_arc[arc.aid]
        for xc in self.crossings:
            xc.over_component = self.arcs[xc.ends[SE][0]].component
            xc.under_component = self.arcs[xc.ends[NE][0]].component

    # ------------------------------------------------------------------
    # queries

    @property
    def chords(self):
        """Reeb chords are in bijection with the crossings, in x-order."""
        return self.crossings

    @property
    def x_order(self):
        return [(slot0 + 1, kind, k) for slot0, (kind, k) in enumerate(self.events)]

    def graph_components(self):
        if not self.crossings:
            return 0
        seen = set()
        count = 0
        for start in range(len(self.crossings)):
            if start in seen:
                continue
            count += 1
            stack = [start]
            seen.add(start)
            while stack:
                c = stack.pop()
                for end in ENDS_CCW:
                    aid, _ = self.crossings[c].ends[end]
                    arc = self.arcs[aid]
                    for c2, _e in (arc.end_a, arc.end_b):
                        if c2 not in seen:
                            seen.add(c2)
                            stack.append(c2)
        return count

    def euler_check(self):
        v = len(self.crossings)
        e = len(self.arcs)
        f = self.n_bounded_faces + 1
        return v - e + f == 1 + self.graph_components()

    def to_json_dict(self):
        lrs, _ = check_left_right_simple(self)
        return {
            "schema_version": 1,
            "events": [[kind, k] for kind, k in self.events],
            "crossings": [
                {
                    "id": c.cid,
                    "slot": c.slot,
                    "height": c.height,
                    "ends": {e: list(c.ends[e]) for e in ENDS_CCW},
                    "quadrant_faces": c.quadrant_face,
                    "over_component": c.over_component,
                    "under_component": c.under_component,
                }
                for c in self.crossings
            ],
            "caps": [
                {
                    "id": p.cap_id,
                    "side": p.side,
                    "slot": p.slot,
                    "height": p.height,
                    "host_arc": p.host_arc,
                    "inner_face": p.inner_face,
                }
                for p in self.caps
            ],
            "arcs": [
                {
                    "id": a.aid,
                    "from": list(a.end_a),
                    "to": list(a.end_b),
                    "winding": a.winding,
                    "caps": [list(c) for c in a.caps],
                    "face_left": a.face_left,
                    "face_right": a.face_right,
                    "component": a.component,
                }
                for a in self.arcs
            ],
            "faces": [
                {
                    "id": f.fid,
                    "walks": [[[aid, d] for aid, d in walk] for walk in f.walks],
                    "quadrants": [[cid, q] for cid, q in f.quadrants],
                    "caps": sorted(set(f.caps)),
                }
                for f in self.faces
            ],
            "n_components": self.n_components,
            "component_rot": self.component_rot,
            "lrs": lrs,
        }


def diagram_from_json_dict(data) -> LagrangianDiagram:
    """Rebuild a diagram from its JSON export.  Construction is
    deterministic, so the rebuilt diagram is identical to the original."""
    return LagrangianDiagram([(kind, k) for kind, k in data["events"]])


# ----------------------------------------------------------------------
# operations

def _bubble_crossings_left(events):
    """Slide crossings left past right caps acting on disjoint strand
    intervals.  Resolution loops of stacked right cusps all live west of
    every cap, so this restores the geometric x-order; a crossing stays
    blocked only when a cap's mouth genuinely separates its strands
    (nested right cusps, whose resolutions are not left-right-simple)."""
    events = list(events)
    changed = True
    while changed:
        changed = False
        for i in range(len(events) - 1):
            (k1, p1), (k2, p2) = events[i], events[i + 1]
            if k1 != "rcap" or k2 != "cross":
                continue
            if p2 <= p1 - 2:
                events[i], events[i + 1] = ("cross", p2), ("rcap", p1)
                changed = True
                break
            if p2 >= p1:
                events[i], events[i + 1] = ("cross", p2 + 2), ("rcap", p1)
                changed = True
                break
    return events


def resolve(front: FrontDiagram, require_plat: bool = True) -> LagrangianDiagram:
    """Lagrangian resolution: left cusps become left caps, right cusps a
    crossing followed by a right cap, front crossings stay crossings.  All
    resolution loops are slid west of the cap block."""
    if require_plat and not front.is_plat:
        raise NotPlatError(f"front {front.serialize()!r} is not plat; platify it first")
    events = []
    for ev in front.events:
        if ev.kind == "L":
            events.append(("lcap", ev.pos))
        elif ev.kind == "X":
            events.append(("cross", ev.pos))
        else:
            events.append(("cross", ev.pos))
            events.append(("rcap", ev.pos))
    return LagrangianDiagram(_bubble_crossings_left(events), source_front=front)


def compute_faces(diagram: LagrangianDiagram):
    """Faces from rotation-system tracing, cross-checked against the cell
    sweep.  Returns the bounded faces followed by the unbounded one."""
    diagram._trace_faces()
    out = list(diagram.faces)
    if diagram.unbounded_face is not None:
        out.append(diagram.unbounded_face)
    return out


def check_left_right_simple(diagram: LagrangianDiagram):
    """True iff left caps form a prefix block and right caps a suffix block
    of the x-order; on failure also returns the offending events."""
    witnesses = []
    seen_other = False
    for slot, kind, k in diagram.x_order:
        if kind == "lcap" and seen_other:
            witnesses.append((slot, kind, k))
        elif kind != "lcap":
            seen_other = True
    seen_rcap = False
    for slot, kind, k in diagram.x_order:
        if kind == "rcap":
            seen_rcap = True
        elif seen_rcap:
            witnesses.append((slot, kind, k))
    return (not witnesses, witnesses)


def path_rotation(diagram: LagrangianDiagram, path: BoundaryPath) -> int:
    """Rotation angle of a smooth path in pi/4 units.

    The path must continue straight through every crossing between
    consecutive steps; entry and exit ray angles are baked into the arc
    windings.  Additive under concatenation, negated under reversal.
    """
    steps = list(path.steps)
    if not steps:
        raise DisconnectedPathError("empty path")
    pairs = list(zip(steps, steps[1:]))
    if path.closed:
        pairs.append((steps[-1], steps[0]))
    for (a1, d1), (a2, d2) in pairs:
        head_c, head_e = diagram.dart_head((a1, d1))
        tail_c, tail_e = diagram.dart_tail((a2, d2))
        if (head_c, OPPOSITE_END[head_e]) != (tail_c, tail_e):
            raise DisconnectedPathError(
                f"steps {(a1, d1)} -> {(a2, d2)} do not continue straight"
            )
    return sum(d * diagram.arcs[aid].winding for aid, d in steps)


def path_cap_touches(diagram: LagrangianDiagram, path: BoundaryPath):
    out = []
    for aid, _d in path.steps:
        out.extend(c for c, _s in diagram.arcs[aid].caps)
    return out


# ----------------------------------------------------------------------
# n-copy

def _lcap_block(k, n):
    # n nested caps, then for each new pair (inserted below the nest) its
    # upper strand pushed to the top: one +, one - crossing per pair of
    # copies, all east of the cap block
    q = n * (k - 1) + 1
    out = [("lcap", q)] * n
    for t in range(1, n + 1):
        base = q + 2 * (n - t)
        out.extend(("cross", base + m) for m in range(1, 2 * (t - 1) + 1))
    return out


def _rcap_block(k, n):
    # mirror image of the left-cap block: the pair crossings first (west of
    # the caps), then n nested merges
    q = n * (k - 1) + 1
    out = []
    for t in range(n, 0, -1):
        base = q + 2 * (n - t)
        out.extend(("cross", base + m) for m in range(2 * (t - 1), 0, -1))
    out.extend([("rcap", q)] * n)
    return out


def _cross_block(k, n):
    p = n * (k - 1)
    out = []
    for r in range(1, n + 1):
        out.extend(("cross", p + n - r + i) for i in range(1, n + 1))
    return out


def n_copy(diagram: LagrangianDiagram, n: int) -> LagrangianDiagram:
    """n parallel Reeb push-off copies of a left-right-simple diagram.

    Each strand becomes an n-cable, each crossing an n x n grid, and each
    cap a nest of n caps with one pair of oppositely-signed crossings per
    pair of copies.  Chord count: n^2 C + n(n-1) K for C crossings and K
    caps in the input; the output is again left-right-simple.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ok, witnesses = check_left_right_simple(diagram)
    if not ok:
        raise NotLRSError(f"diagram is not left-right-simple at {witnesses}")
    if n == 1:
        return LagrangianDiagram(diagram.events)
    events = []
    for kind, k in diagram.events:
        if kind == "lcap":
            events.extend(_lcap_block(k, n))
        elif kind == "rcap":
            events.extend(_rcap_block(k, n))
        else:
            events.extend(_cross_block(k, n))
    return LagrangianDiagram(events)
