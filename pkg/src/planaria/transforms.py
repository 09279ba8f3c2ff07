"""Double-bigon expansion and how simplifying sequences survive it.

A double point is replaced by a twist of three double points (two bigons)
with the same four boundary attachments.  The twist runs along the axis
from the side where both strands arrive to the side where they leave, so
the choice does not depend on labels or on the direction of travel.

Boundary slots of a tangle are numbered counterclockwise and slot ``k``
attaches where position ``i + k`` of the replaced crossing did, for the
first position ``i`` such that positions ``i`` and ``i + 1`` are both
entered by the curve.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from .codec import canonical_key, isomorphism
from .core import BLACK, GRAY, CurveDiagram, check, theta, traversal
from .moves import (ONE_THREE, R1A, R1B, R3, DELTA, MoveInstance, StaleMove, _triangle, apply,
                    apply_traced, enumerate_moves, is_applicable)

log = logging.getLogger(__name__)


class TransportError(ValueError):
    def __init__(self, step, message):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass(frozen=True)
class LocalTangle:
    """A two-strand tangle with four boundary slots.

    ``alpha`` pairs the internal darts of ``n`` crossings; ``slots[k]`` is the
    dart that attaches to boundary slot ``k``.
    """

    n: int
    alpha: dict
    slots: tuple

    def __post_init__(self):
        if len(self.slots) != 4:
            raise ValueError("a local tangle has exactly four boundary slots")
        used = set(self.alpha) | set(self.slots)
        if used != set(range(4 * self.n)) or len(self.slots) + len(self.alpha) != 4 * self.n:
            raise ValueError("tangle darts must be internal or boundary, exactly once")


SINGLE_CROSSING = LocalTangle(1, {}, (0, 1, 2, 3))

# crossings X, Y, Z stacked along the axis; positions SE=0, NE=1, NW=2, SW=3
_X, _Y, _Z = 0, 4, 8
DOUBLE_BIGON = LocalTangle(3, {
    _X + 2: _Y + 3, _Y + 3: _X + 2,
    _X + 1: _Y + 0, _Y + 0: _X + 1,
    _Y + 2: _Z + 3, _Z + 3: _Y + 2,
    _Y + 1: _Z + 0, _Z + 0: _Y + 1,
}, (_X + 3, _X + 0, _Z + 1, _Z + 2))


def rotated(tangle: LocalTangle, k: int) -> LocalTangle:
    """The same tangle with its boundary slots turned by ``k`` steps."""
    slots = tuple(tangle.slots[(j - k) % 4] for j in range(4))
    return LocalTangle(tangle.n, tangle.alpha, slots)


def entry_offset(diagram: CurveDiagram, c: int) -> int:
    """First position ``i`` of crossing ``c`` with ``i`` and ``i+1`` both entered."""
    entered = set()
    for d in traversal(diagram, 0):
        if theta(d) >> 2 == c:
            entered.add(theta(d) & 3)
    for i in range(4):
        if i in entered and (i + 1) % 4 in entered:
            return i
    raise AssertionError("crossing with no adjacent entries")


def substitute(diagram: CurveDiagram, c: int, tangle: LocalTangle, offset: int | None = None,
               color: str = BLACK) -> CurveDiagram:
    """Replace crossing ``c`` with ``tangle``; its first crossing keeps id ``c``."""
    if diagram.is_bare or not 0 <= c < diagram.n:
        raise ValueError(f"no crossing {c}")
    if offset is None:
        offset = entry_offset(diagram, c)
    n = diagram.n
    place = [c] + [n + j for j in range(tangle.n - 1)]

    def where(t):
        return 4 * place[t >> 2] + (t & 3)

    alpha = list(diagram.alpha) + [0] * (4 * (tangle.n - 1))
    slot_dart = {}
    for k in range(4):
        slot_dart[(offset + k) % 4] = where(tangle.slots[k])
    for p in range(4):
        q = diagram.alpha[4 * c + p]
        partner = slot_dart[q & 3] if q >> 2 == c else q
        alpha[slot_dart[p]] = partner
        alpha[partner] = slot_dart[p]
    for a, b in tangle.alpha.items():
        alpha[where(a)] = where(b)
    colors = diagram.colors + tuple(color for _ in range(tangle.n - 1))
    return check(CurveDiagram(tuple(alpha), colors, diagram.bare_genus))


def expand_double_bigon(diagram: CurveDiagram, crossings="all") -> CurveDiagram:
    """Replace each listed crossing with a double bigon.

    Unlisted crossings keep their ids and darts; the twist of crossing ``c``
    occupies ``c`` and two new ids at the end.
    """
    if diagram.is_bare:
        if crossings not in ("all", (), []) and list(crossings):
            raise ValueError("the bare curve has no crossings")
        return diagram
    targets = list(range(diagram.n)) if crossings == "all" else sorted(set(crossings))
    for c in targets:
        if not 0 <= c < diagram.n:
            raise ValueError(f"no crossing {c}")
    offsets = {c: entry_offset(diagram, c) for c in targets}
    out = diagram
    for c in targets:
        out = substitute(out, c, DOUBLE_BIGON, offsets[c], diagram.colors[c])
    return out


def expanded_ids(diagram: CurveDiagram, crossings) -> dict:
    """Crossing ids that each expanded crossing occupies after expansion."""
    n = diagram.n
    out = {}
    for j, c in enumerate(sorted(set(crossings))):
        out[c] = (c, n + 2 * j, n + 2 * j + 1)
    return out


# searches that keep some crossings frozen

def guarded_moves(diagram: CurveDiagram, guards, kinds=ONE_THREE):
    """Moves that keep clear of the guard crossings.

    A 1b kink is drawn next to the crossing its dart leaves, so it only
    needs that crossing to be unguarded.
    """
    guards = set(guards)
    out = []
    for m in enumerate_moves(diagram, kinds):
        d = m.anchor[0]
        if m.kind in (R1A, R1B):
            if d >> 2 in guards:
                continue
        elif m.kind == R3:
            if any(t >> 2 in guards for t in _triangle(diagram, d)):
                continue
        else:
            continue
        out.append(m)
    return out


def _marked(diagram: CurveDiagram, guards):
    colors = tuple(GRAY if c in guards else BLACK for c in range(diagram.n))
    return diagram.recolored(colors)


def guarded_search(start: CurveDiagram, goal: CurveDiagram, guards, goal_guards,
                   max_crossings: int, max_states: int = 200_000, kinds=ONE_THREE):
    """Shortest move sequence from ``start`` to ``goal`` that never touches
    the guard crossings; guards are tracked by identity through moves."""
    target = canonical_key(_marked(goal, goal_guards), colors=True)
    s0 = _marked(start, guards)
    k0 = canonical_key(s0, colors=True)
    if k0 == target:
        return []
    parent = {k0: None}
    queue = deque([(s0, frozenset(guards))])
    while queue:
        state, gs = queue.popleft()
        key = canonical_key(state, colors=True)
        for m in guarded_moves(state, gs, kinds):
            if state.n + DELTA[m.kind] > max_crossings:
                continue
            nxt, trace = apply_traced(state, m)
            ngs = frozenset(trace.crossing_map[g] for g in gs)
            nxt = _marked(nxt, ngs)
            k = canonical_key(nxt, colors=True)
            if k in parent:
                continue
            parent[k] = (key, m)
            if k == target:
                seq = []
                while parent[k] is not None:
                    k, mv = parent[k]
                    seq.append(mv)
                return seq[::-1]
            if len(parent) >= max_states:
                return None
            queue.append((nxt, ngs))
    return None


def _tangle_dart(diagram: CurveDiagram, marks, c: int, p: int) -> int:
    """Dart of ``expand_double_bigon(diagram, marks)`` that takes over
    position ``p`` of expanded crossing ``c``."""
    place = [c, *expanded_ids(diagram, marks)[c][1:]]
    k = (p - entry_offset(diagram, c)) % 4
    t = DOUBLE_BIGON.slots[k]
    return 4 * place[t >> 2] + (t & 3)


def _translate(move: MoveInstance, f: dict) -> MoveInstance:
    if move.kind == R1B:
        return MoveInstance(R1B, (f[move.anchor[0]], move.anchor[1]))
    return MoveInstance(move.kind, (f[move.anchor[0]],))


def _support(diagram: CurveDiagram, move: MoveInstance) -> set:
    if move.kind == R3:
        return {t >> 2 for t in _triangle(diagram, move.anchor[0])}
    return {move.anchor[0] >> 2}


def transport_sequence(seq_l, left: CurveDiagram, expanded, right: CurveDiagram | None = None,
                       headroom: int = 2, max_states: int = 200_000):
    """Carry a {1a,1b,3} sequence on ``left`` over to its double-bigon expansion.

    Crossings are expanded one at a time.  For each one, moves away from the
    twist are copied through the dart correspondence, and a 1a or 3 move
    that uses the twist is replaced by a shortest {1a,1b,3} sequence that
    leaves every other crossing alone and reaches the expansion of the next
    state, allowing up to ``headroom`` crossings above the larger end.
    """
    targets = sorted(set(expanded))
    if right is None:
        right = expand_double_bigon(left, targets)
    elif canonical_key(right) != canonical_key(expand_double_bigon(left, targets)):
        raise TransportError(0, "right-hand diagram is not the expansion of the left-hand one")
    seq = list(seq_l)
    cur = left
    # expansion keeps the ids of other crossings and appends the twist, so
    # each target keeps its id in every intermediate diagram; a twist may come
    # out turned half way round, which is the same tangle under other labels
    for c in targets:
        seq = _transport_one(seq, cur, c, headroom, max_states)
        cur = expand_double_bigon(cur, [c])
    return _relabel_sequence(seq, cur, right)


def _relabel_sequence(seq, start, target_start):
    out = []
    a, b = start, target_start
    for m in seq:
        step = _translate(m, isomorphism(a, b))
        a, b = apply(a, m), apply(b, step)
        out.append(step)
    return out


def _transport_one(seq_l, left: CurveDiagram, c: int, headroom: int, max_states: int):
    marks = {c}
    cur_l = left
    expect = expand_double_bigon(cur_l, marks)
    state = expect
    out = []
    for i, m in enumerate(seq_l):
        if m.kind not in ONE_THREE:
            raise TransportError(i, f"move kind {m.kind} outside 1a, 1b, 3")
        if not is_applicable(cur_l, m):
            raise TransportError(i, f"{m} not applicable on the left")
        nxt_l, trace = apply_traced(cur_l, m)
        nxt_marks = {trace.crossing_map[x] for x in marks if trace.crossing_map[x] is not None}
        goal = expand_double_bigon(nxt_l, nxt_marks)
        f = isomorphism(expect, state)
        if m.kind == R1B or not _touches(cur_l, m, marks):
            if m.kind == R1B and m.anchor[0] >> 2 in marks:
                d = m.anchor[0]
                local = MoveInstance(R1B, (_tangle_dart(cur_l, marks, d >> 2, d & 3), m.anchor[1]))
            else:
                local = m
            step = _translate(local, f)
            state = apply(state, step)
            out.append(step)
            if canonical_key(state) != canonical_key(goal):
                raise TransportError(i, f"copied move {m} does not reach the expanded next state")
        else:
            keep = set(range(cur_l.n)) - marks - _support(cur_l, m)
            guards = {f[4 * x] >> 2 for x in keep}
            goal_guards = {trace.crossing_map[x] for x in keep}
            bridge = None
            for extra in range(headroom + 1):
                cap = max(state.n, goal.n) + extra
                bridge = guarded_search(state, goal, guards, goal_guards, cap, max_states)
                if bridge is not None:
                    break
            if bridge is None:
                raise TransportError(i, f"no {{1a,1b,3}} bridge for {m} within {headroom} extra crossings")
            for b in bridge:
                state = apply(state, b)
            out.extend(bridge)
        cur_l, marks, expect = nxt_l, nxt_marks, goal
    return out


def _touches(diagram: CurveDiagram, move: MoveInstance, marks) -> bool:
    if move.kind == R1A:
        return move.anchor[0] >> 2 in marks
    if move.kind == R3:
        return any(t >> 2 in marks for t in _triangle(diagram, move.anchor[0]))
    return False
