"""Curves on the torus that are homotopic but not related by moves 1 and 3.

Both curves represent the simple essential class.  The right-hand one is a
clasp inside a disk (two strands meeting twice) closed up by two arcs that
run around the torus.  The disk is marked by those two outside arcs: cutting
the curve there leaves the two strands of the disk tangle, and the number of
double points between different strands is unchanged by moves 1 and 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codec import canonical_key
from .core import CurveDiagram, check, genus, traversal
from .moves import ONE_THREE, R1A, R1B, R3, MoveInstance, _triangle, apply_traced, r3_outward
from .search import SearchConfig, SearchError, explore

CLASP_ON_TORUS = CurveDiagram((4, 5, 7, 6, 0, 1, 3, 2))
ESSENTIAL = CurveDiagram.essential_torus_curve()


class DiskMarkingError(ValueError):
    pass


def _edge(diagram, d):
    return frozenset((d, diagram.alpha[d]))


def outside_arcs(diagram: CurveDiagram, outer_face: int | None = None):
    """Edges with the outer face on both sides; the outer face defaults to
    the one with the most sides."""
    flist, owner = diagram.face_index()
    if outer_face is None:
        outer_face = max(range(len(flist)), key=lambda f: (flist[f].sides, -f))
    arcs = {_edge(diagram, d) for d in range(len(diagram.alpha))
            if owner[d] == outer_face and owner[diagram.alpha[d]] == outer_face}
    if len(arcs) != 2:
        raise DiskMarkingError(f"expected 2 arcs outside the disk, found {len(arcs)}")
    return tuple(sorted(arcs, key=min))


def disk_tangle_intersections(diagram: CurveDiagram, arcs, disk=None) -> int:
    """Double points between the two strands left after cutting at ``arcs``.

    ``disk`` optionally lists the crossings inside the disk; every crossing
    must be there, since the complement of the disk carries none.
    """
    if diagram.is_bare:
        return 0
    if disk is not None and set(disk) != set(range(diagram.n)):
        raise DiskMarkingError("crossings outside the disk")
    arcs = [frozenset(a) for a in arcs]
    if len(arcs) != 2 or any(len(a) != 2 or _edge(diagram, min(a)) != a for a in arcs):
        raise DiskMarkingError("disk marking must name two edges of the diagram")
    order = traversal(diagram, min(arcs[0]))
    strand = 0
    passes: dict[int, list[int]] = {}
    for d in order:
        passes.setdefault(d >> 2, []).append(strand)
        if _edge(diagram, d) in arcs:
            strand ^= 1
    if strand:
        raise DiskMarkingError("outside arcs do not split the curve in two")
    return sum(1 for s in passes.values() if s[0] != s[1])


def carry_arcs(diagram: CurveDiagram, arcs, move: MoveInstance, result: CurveDiagram, trace):
    """Outside arcs after an in-disk move, following the end that stays put."""
    out = []
    for arc in arcs:
        x, y = sorted(arc)
        if move.kind == R1B:
            d0 = move.anchor[0]
            if d0 in arc:
                far = y if x == d0 else x
                out.append(_edge(result, far))
            else:
                out.append(frozenset((x, y)))
        elif move.kind == R3:
            tri = _triangle(diagram, move.anchor[0])
            mate = {}
            for o, p in r3_outward(diagram, tri):
                mate[o], mate[p] = p, o
            corners = {4 * (t >> 2) + k for t in tri for k in range(4)}
            ends_in = [z for z in (x, y) if z in corners]
            if not ends_in:
                out.append(frozenset((x, y)))
            elif all(z in mate for z in ends_in):
                if len(ends_in) == 2:
                    out.append(frozenset((mate[x], mate[y])))
                else:
                    far = y if x in mate else x
                    out.append(_edge(result, far))
            else:
                raise DiskMarkingError("move 3 across an outside arc")
        elif move.kind == R1A:
            alive = [z for z in (x, y) if trace.crossing_map[z >> 2] is not None]
            if not alive:
                raise DiskMarkingError("move 1a removes a loop that leaves the disk")
            out.append(_edge(result, trace.dart_map[alive[0]]))
        else:
            raise ValueError(f"move {move.kind} is not a disk move of type 1 or 3")
    return tuple(sorted(out, key=min))


@dataclass
class TorusReport:
    status: str
    states: int
    edges: int
    n_min: int | None
    invariant_values: set = field(default_factory=set)
    embedded: int = 0
    genus_violations: int = 0
    reached: bool = False

    @property
    def ok(self) -> bool:
        return (self.status == "exhausted" and self.embedded == 0 and self.genus_violations == 0
                and len(self.invariant_values) == 1)

    def as_dict(self):
        return {
            "status": self.status,
            "n_min": self.n_min,
            "states": self.states,
            "edges": self.edges,
            "violations": {"embedded": self.embedded, "genus": self.genus_violations,
                           "invariant_values": sorted(self.invariant_values)},
        }


def verify_torus(max_crossings: int, start: CurveDiagram = CLASP_ON_TORUS, kinds=ONE_THREE,
                 max_states: int = 1_000_000, target: CurveDiagram | None = None) -> TorusReport:
    """Explore from ``start`` and evaluate the disk invariant on every class.

    Outside arcs are carried along the edge that first reaches each class;
    the invariant is evaluated on every edge, so a class reached twice with
    different values shows up as a second value.
    """
    if not set(kinds) <= set(ONE_THREE):
        raise SearchError("verify_torus takes kinds from 1a, 1b, 3 only")
    check(start)
    if genus(start) != 1:
        raise SearchError("start curve is not on the torus")
    report = TorusReport("", 0, 0, None)
    target_key = canonical_key(target) if target is not None else None
    if start.is_bare:
        report.invariant_values.add(0)
        arcs0 = None
    else:
        arcs0 = outside_arcs(start)
        report.invariant_values.add(disk_tangle_intersections(start, arcs0))
    k0 = canonical_key(start)
    marks = {k0: arcs0}
    seen = {k0}

    def on_edge(src, move, dst):
        k_src, k_dst = canonical_key(src), canonical_key(dst)
        result, trace = apply_traced(src, move)
        arcs = carry_arcs(src, marks[k_src], move, result, trace)
        v = disk_tangle_intersections(result, arcs)
        report.invariant_values.add(v)
        if k_dst not in seen:
            seen.add(k_dst)
            marks[k_dst] = arcs
            if result.is_bare:
                report.embedded += 1
            if genus(result) != 1:
                report.genus_violations += 1
            if k_dst == target_key:
                report.reached = True

    config = SearchConfig(kinds=tuple(kinds), max_crossings=max_crossings, max_states=max_states,
                          stop_at_simplified=False)
    res = explore(start, config, edge_visitor=on_edge)
    report.status = res.status
    report.states = res.visited
    report.edges = res.edges
    report.n_min = res.min_crossings
    if k0 == target_key:
        report.reached = True
    return report
