"""Bounded reachability over the Reidemeister move graph."""

from __future__ import annotations

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field

from .codec import canonical_key, isomorphism
from .core import CurveDiagram
from .moves import ALL_KINDS, DELTA, MoveInstance, StaleMove, apply, enumerate_moves, inverse, is_applicable

log = logging.getLogger(__name__)

SIMPLIFIED, EXHAUSTED, CAP_HIT = "simplified", "exhausted", "cap_hit"


class SearchError(ValueError):
    pass


@dataclass
class SearchConfig:
    kinds: tuple = ALL_KINDS
    max_crossings: int = 10
    max_states: int = 1_000_000
    max_depth: int | None = None
    strategy: str = "bfs"  # or "priority": fewest crossings first
    mirror_quotient: bool = False
    stop_at_simplified: bool = True
    colored: bool = False  # keep gray and black crossings apart when deduplicating


@dataclass
class SearchResult:
    status: str
    visited: int
    edges: int = 0
    frontier_peak: int = 0
    min_crossings: int | None = None
    sequence: list = field(default_factory=list)
    witness: CurveDiagram | None = None
    cap: str | None = None

    @property
    def simplified(self) -> bool:
        return self.status == SIMPLIFIED


def explore(start: CurveDiagram, config: SearchConfig, visitor=None, edge_visitor=None) -> SearchResult:
    """Visit every canonical class reachable from ``start`` within the caps.

    ``visitor(state, depth)`` sees each class once, through the representative
    diagram that was reached first.  ``edge_visitor(src, move, dst)`` sees
    every applied move whose result is within the crossing cap.
    """
    if start.n > config.max_crossings:
        raise SearchError(f"start has {start.n} crossings, above max_crossings={config.max_crossings}")
    if config.max_states < 1:
        raise SearchError("max_states must be positive")
    key0 = canonical_key(start, config.mirror_quotient, config.colored)
    parent = {key0: None}
    rep = {key0: start}
    depth = {key0: 0}
    counter = 0
    if config.strategy == "priority":
        frontier = [(start.n, 0, key0)]
        pop = lambda: heapq.heappop(frontier)[2]
        push = lambda k, d: heapq.heappush(frontier, (d.n, counter, k))
    else:
        frontier = deque([key0])
        pop = frontier.popleft
        push = lambda k, d: frontier.append(k)
    min_n = start.n
    edges = 0
    peak = 1
    if visitor:
        visitor(start, 0)
    if start.is_bare and start.bare_genus == 0:
        return SearchResult(SIMPLIFIED, 1, 0, 1, 0, [], start)
    hit_cap = None
    found = None
    while frontier:
        key = pop()
        state = rep[key]
        if config.max_depth is not None and depth[key] >= config.max_depth:
            continue
        for m in enumerate_moves(state, config.kinds):
            if state.n + DELTA[m.kind] > config.max_crossings:
                continue
            nxt = apply(state, m)
            edges += 1
            if edge_visitor:
                edge_visitor(state, m, nxt)
            k = canonical_key(nxt, config.mirror_quotient, config.colored)
            if k in parent:
                continue
            if len(parent) >= config.max_states:
                hit_cap = "max_states"
                continue
            parent[k] = (key, m)
            rep[k] = nxt
            depth[k] = depth[key] + 1
            counter += 1
            push(k, nxt)
            min_n = min(min_n, nxt.n)
            if visitor:
                visitor(nxt, depth[k])
            if nxt.is_bare and nxt.bare_genus == 0 and found is None:
                found = k
                if config.stop_at_simplified:
                    break
        peak = max(peak, len(frontier))
        if found is not None and config.stop_at_simplified:
            break
    if found is not None:
        seq = []
        k = found
        while parent[k] is not None:
            k, m = parent[k]
            seq.append(m)
        seq.reverse()
        return SearchResult(SIMPLIFIED, len(parent), edges, peak, 0, seq, rep[found])
    if hit_cap:
        return SearchResult(CAP_HIT, len(parent), edges, peak, min_n, cap=hit_cap)
    witness = min(rep.values(), key=lambda d: d.n)
    return SearchResult(EXHAUSTED, len(parent), edges, peak, min_n, witness=witness)


def replay(start: CurveDiagram, sequence) -> CurveDiagram:
    d = start
    for i, m in enumerate(sequence):
        if not is_applicable(d, m):
            raise StaleMove(f"step {i}: {m} not applicable")
        d = apply(d, m)
    return d


def translate_move(move: MoveInstance, f: dict) -> MoveInstance:
    """The same move on a diagram reached through the dart map ``f``."""
    anchor = tuple(f.get(a, a) if isinstance(a, int) else a for a in move.anchor)
    return MoveInstance(move.kind, anchor)


def inverse_sequence(start: CurveDiagram, sequence) -> list:
    """Moves undoing ``sequence`` one step at a time, starting from its end."""
    states = [start]
    for m in sequence:
        states.append(apply(states[-1], m))
    cur = states[-1]
    out = []
    for i in range(len(sequence) - 1, -1, -1):
        back = inverse(sequence[i], states[i], states[i + 1])
        back = translate_move(back, isomorphism(states[i + 1], cur) or {})
        cur = apply(cur, back)
        out.append(back)
    return out


def naive_reachable(start: CurveDiagram, kinds, max_crossings: int, max_depth: int):
    """Breadth-first expansion without deduplication, collapsed to canonical
    classes only at the end; an oracle for explore on tiny inputs."""
    layer = [start]
    keys = {canonical_key(start)}
    for _ in range(max_depth):
        nxt = []
        for d in layer:
            for m in enumerate_moves(d, kinds):
                if d.n + DELTA[m.kind] > max_crossings:
                    continue
                nxt.append(apply(d, m))
        keys.update(canonical_key(d) for d in nxt)
        layer = nxt
        if not layer:
            break
    return keys
