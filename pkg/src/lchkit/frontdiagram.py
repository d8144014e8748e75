"""Front projections of Legendrian links as x-ordered Morse event words.

A front is encoded by tokens ``Lk`` / ``Rk`` / ``Xk`` read left to right:
``Lk`` inserts a pair of strands at heights k, k+1 (a left cusp), ``Rk``
merges strands k, k+1 (a right cusp), ``Xk`` crosses strands k and k+1.
Heights are 1-based and counted from the bottom strand upward at the
event's x-slot.  A closed front starts and ends with zero strands.

Front crossings carry no over/under data: in a front the strand of lesser
slope is determined geometrically, so the descending strand is the one
that ends up on top after Lagrangian resolution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FrontSyntaxError, TopologyError

_TOKEN_RE = re.compile(r"([LRX])([0-9]+)$")


@dataclass(frozen=True)
class FrontEvent:
    kind: str  # "L", "R" or "X"
    pos: int  # strand height, 1-based from the bottom

    def token(self):
        return f"{self.kind}{self.pos}"


class _Segment:
    """Maximal strand run between two consecutive events touching it."""

    __slots__ = ("sid", "west", "east", "component", "direction")

    def __init__(self, sid):
        self.sid = sid
        self.west = None  # (segment, "west"|"east") glued at the west end
        self.east = None
        self.component = None
        self.direction = None  # "E" or "W" once the component is oriented

    def __repr__(self):
        return f"seg{self.sid}"


class FrontDiagram:
    """Validated front with traced components and default orientations.

    Components are oriented so that the upper strand of the component's
    leftmost cusp points east (away from the cusp).  tb is orientation
    independent; rot flips sign under reversal.
    """

    def __init__(self, events):
        self.events = tuple(events)
        self._trace()

    # -- construction -----------------------------------------------------

    def _trace(self):
        segments = []
        cusps = []  # (event_idx, kind, lower_seg, upper_seg)
        crossings = []  # (event_idx, ascending_in, descending_in) at the west side
        columns = [()]  # per slot boundary, bottom-up tuple of segment ids
        active = []

        def new_segment():
            seg = _Segment(len(segments))
            segments.append(seg)
            return seg

        for idx, ev in enumerate(self.events):
            n = len(active)
            k = ev.pos
            if k < 1:
                raise TopologyError(f"event {idx}: position {k} < 1", event_index=idx)
            if ev.kind == "L":
                if k > n + 1:
                    raise TopologyError(
                        f"event {idx}: L{k} exceeds {n}+1 available gaps", event_index=idx
                    )
                lo, hi = new_segment(), new_segment()
                lo.west = (hi, "west")
                hi.west = (lo, "west")
                cusps.append((idx, "L", lo, hi))
                active[k - 1 : k - 1] = [lo, hi]
            elif ev.kind in ("R", "X"):
                if k + 1 > n:
                    raise TopologyError(
                        f"event {idx}: {ev.kind}{k} needs strands {k},{k + 1} but only {n} present",
                        event_index=idx,
                    )
                a, b = active[k - 1], active[k]
                if ev.kind == "R":
                    a.east = (b, "east")
                    b.east = (a, "east")
                    cusps.append((idx, "R", a, b))
                    del active[k - 1 : k + 1]
                else:
                    c, d = new_segment(), new_segment()
                    # a ascends k -> k+1, b descends k+1 -> k
                    a.east = (c, "west")
                    c.west = (a, "east")
                    b.east = (d, "west")
                    d.west = (b, "east")
                    crossings.append((idx, a, b))
                    active[k - 1], active[k] = d, c
            else:
                raise FrontSyntaxError(f"event {idx}: unknown kind {ev.kind!r}", event_index=idx)
            columns.append(tuple(s.sid for s in active))

        if active:
            raise TopologyError(
                f"front does not close: {len(active)} strands left open", event_index=len(self.events)
            )

        self.segments = segments
        self.cusps = cusps
        self.crossings = crossings
        self.columns = columns
        self._label_and_orient()

    def _label_and_orient(self):
        # Walk each component; orientation seeded at its leftmost cusp.
        unvisited = set(s.sid for s in self.segments)
        comp = 0
        seg_of = {s.sid: s for s in self.segments}
        while unvisited:
            reachable = self._component_of(seg_of[min(unvisited)])
            leftmost = min(
                (c for c in self.cusps if c[2].sid in reachable),
                key=lambda c: c[0],
            )
            # upper strand of the leftmost (left) cusp heads east
            _, kind, lo, hi = leftmost
            start, start_dir = (hi, "E") if kind == "L" else (hi, "W")
            self._orient_from(start, start_dir, comp)
            for sid in reachable:
                unvisited.discard(sid)
            comp += 1
        self.n_components = comp

    def _component_of(self, seg):
        seen = {seg.sid}
        stack = [seg]
        while stack:
            s = stack.pop()
            for link in (s.west, s.east):
                t = link[0]
                if t.sid not in seen:
                    seen.add(t.sid)
                    stack.append(t)
        return seen

    def _orient_from(self, seg, direction, comp):
        while seg.direction is None:
            seg.direction = direction
            seg.component = comp
            link = seg.east if direction == "E" else seg.west
            nxt, end = link
            # heading into the west end of the next segment means we exit east
            direction = "E" if end == "west" else "W"
            seg = nxt

    # -- queries -----------------------------------------------------------

    @property
    def is_plat(self):
        kinds = "".join(e.kind for e in self.events)
        return re.fullmatch(r"L*X*R*", kinds) is not None

    def strand_profile(self):
        counts = [0]
        for ev in self.events:
            delta = {"L": 2, "R": -2, "X": 0}[ev.kind]
            counts.append(counts[-1] + delta)
        return counts

    def component_labels(self):
        """Per slot boundary, bottom-up tuple of component ids."""
        seg_of = {s.sid: s for s in self.segments}
        return [tuple(seg_of[sid].component for sid in col) for col in self.columns]

    def serialize(self):
        return " ".join(ev.token() for ev in self.events)

    def __eq__(self, other):
        return isinstance(other, FrontDiagram) and self.events == other.events

    def __hash__(self):
        return hash(self.events)

    def __repr__(self):
        return f"FrontDiagram({self.serialize()!r})"


def parse_front(text: str) -> FrontDiagram:
    """Parse a whitespace-separated event word; ``#`` comments to end of line."""
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    events = []
    for i, tok in enumerate(tokens):
        m = _TOKEN_RE.match(tok)
        if not m:
            raise FrontSyntaxError(f"event {i}: bad token {tok!r}", event_index=i)
        events.append(FrontEvent(m.group(1), int(m.group(2))))
    return FrontDiagram(events)


def load_front(path) -> FrontDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_front(fh.read())


# -- platification ----------------------------------------------------------

def _swap_XL(j, k):
    """[Xj, Lk] -> [Lk', Xj'] when the cusp clears the crossing."""
    if k <= j:
        return [FrontEvent("L", k), FrontEvent("X", j + 2)]
    return [FrontEvent("L", k), FrontEvent("X", j)]  # k >= j+2


def _swap_RL(j, k):
    """[Rj, Lk] -> [Lk', Rj']; the cusp slides past the cap above or below."""
    if k <= j - 1:
        return [FrontEvent("L", k), FrontEvent("R", j + 2)]
    return [FrontEvent("L", k + 2), FrontEvent("R", j)]


def platify(front: FrontDiagram) -> FrontDiagram:
    """Normalize to plat form (L* X* R*) within the Legendrian isotopy class.

    Adjacent events acting on disjoint strand intervals are commuted; when a
    cusp is blocked by a crossing, a type-II pair is inserted:

        [Xj, L(j+1)] = [Lj, X(j+2), X(j+1), Xj]
        [Rj, X(j-1)] = [X(j-1), Xj, R(j-1), X(j-1)]

    Both identities are strand-permutation equalities realized by a single
    strand sliding through the cusp.  Idempotent on plat inputs.
    """
    events = list(front.events)

    # phase 1: pull every left cusp in front of all crossings and right cusps
    progress = True
    while progress:
        progress = False
        for i in range(1, len(events)):
            if events[i].kind != "L" or events[i - 1].kind == "L":
                continue
            prev, cur = events[i - 1], events[i]
            j, k = prev.pos, cur.pos
            if prev.kind == "X":
                if k == j + 1:
                    repl = [
                        FrontEvent("L", j),
                        FrontEvent("X", j + 2),
                        FrontEvent("X", j + 1),
                        FrontEvent("X", j),
                    ]
                else:
                    repl = _swap_XL(j, k)
            else:  # "R"
                repl = _swap_RL(j, k)
            events[i - 1 : i + 1] = repl
            progress = True
            break

    # phase 2: push every right cusp behind all crossings
    progress = True
    while progress:
        progress = False
        for i in range(len(events) - 1):
            if events[i].kind != "R" or events[i + 1].kind != "X":
                continue
            cur, nxt = events[i], events[i + 1]
            p, j = cur.pos, nxt.pos
            if j == p - 1:
                repl = [
                    FrontEvent("X", p - 1),
                    FrontEvent("X", p),
                    FrontEvent("R", p - 1),
                    FrontEvent("X", p - 1),
                ]
            elif j <= p - 2:
                repl = [FrontEvent("X", j), FrontEvent("R", p)]
            else:  # j >= p
                repl = [FrontEvent("X", j + 2), FrontEvent("R", p)]
            events[i : i + 2] = repl
            progress = True
            break

    result = FrontDiagram(events)
    if not result.is_plat:
        raise TopologyError(f"platification failed on {front.serialize()!r}")
    return result


# -- classical invariants ----------------------------------------------------

def classical_invariants(front: FrontDiagram):
    """Per-component (tb, rot) under the default orientations.

    tb = (signed writhe of the front, self-crossings only) - (cusps on the
    component)/2.  A front crossing is positive when its ascending and
    descending strands point the same way in x.  rot = (down-cusps -
    up-cusps)/2, a cusp being "down" when the traversal passes from its
    upper strand to its lower strand.
    """
    writhe = [0] * front.n_components
    cusp_count = [0] * front.n_components
    updown = [0] * front.n_components
    for _, asc, desc in front.crossings:
        if asc.component != desc.component:
            continue
        sign = 1 if asc.direction == desc.direction else -1
        writhe[asc.component] += sign
    for _, kind, lo, hi in front.cusps:
        comp = lo.component
        cusp_count[comp] += 1
        if kind == "L":
            down = hi.direction == "W"  # arrives along the upper strand
        else:
            down = hi.direction == "E"
        updown[comp] += 1 if down else -1
    out = []
    for comp in range(front.n_components):
        if cusp_count[comp] % 2 or updown[comp] % 2:
            raise TopologyError(f"component {comp}: odd cusp bookkeeping")
        out.append(
            {
                "component": comp,
                "tb": writhe[comp] - cusp_count[comp] // 2,
                "rot": updown[comp] // 2,
            }
        )
    return out
