"""Reidemeister moves 1a, 1b, 2a, 2b and 3 as rewrites of the edge pairing.

Anchors refer to darts of the diagram the move was enumerated from:

* ``R1a``: a dart of a monogon face
* ``R1b``: ``(dart, side)``; the kink goes on the edge leaving ``dart``, to
  the left or right of travel from ``dart`` towards its partner
* ``R2a``: a dart of a bigon face
* ``R2b``: ``(d1, d2, flag)``; the edges leaving ``d1`` and ``d2`` both have
  the same face on their right, and a finger of one is pushed across the
  other through that face.  For two different edges the flag says which
  one moves (the results agree); when both darts lie on one edge it says
  which of the two portions comes first along the edge.
* ``R3``: a dart of a triangle face

Faces are named by their smallest dart.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BLACK, GRAY, CurveDiagram, genus, sigma, sigma_inv, theta

R1A, R1B, R2A, R2B, R3 = "1a", "1b", "2a", "2b", "3"
ALL_KINDS = (R1A, R1B, R2A, R2B, R3)
ONE_THREE = (R1A, R1B, R3)
DELTA = {R1A: -1, R1B: 1, R2A: -2, R2B: 2, R3: 0}


class StaleMove(ValueError):
    pass


@dataclass(frozen=True)
class MoveInstance:
    kind: str
    anchor: tuple

    def __str__(self):
        return f"{self.kind}:{self.anchor}"


@dataclass
class Trace:
    """Fate of crossings and darts under one move."""

    crossing_map: list  # old crossing -> new crossing or None
    created: list = field(default_factory=list)
    dart_map: dict = field(default_factory=dict)  # surviving old dart -> new dart


def parse_kinds(text) -> tuple[str, ...]:
    if text is None or text == "all":
        return ALL_KINDS
    if isinstance(text, str):
        text = [t.strip() for t in text.split(",") if t.strip()]
    kinds = tuple(k.upper().lstrip("R").lower() for k in text)
    for k in kinds:
        if k not in ALL_KINDS:
            raise ValueError(f"unknown move kind {k!r}")
    return kinds


# applicability tests

def _is_monogon(diagram, d):
    return diagram.alpha[d] == sigma_inv(d)


def _bigon(diagram, d):
    alpha = diagram.alpha
    e = sigma(alpha[d])
    if e == d or sigma(alpha[e]) != d:
        return None
    if d >> 2 == e >> 2:
        return None
    return d, e


def _triangle(diagram, d):
    alpha = diagram.alpha
    t2 = sigma(alpha[d])
    t3 = sigma(alpha[t2])
    if sigma(alpha[t3]) != d:
        return None
    if len({d >> 2, t2 >> 2, t3 >> 2}) != 3:
        return None
    return d, t2, t3


def enumerate_moves(diagram: CurveDiagram, kinds=ALL_KINDS) -> list[MoveInstance]:
    kinds = set(kinds)
    out: list[MoveInstance] = []
    if diagram.is_bare:
        if R1B in kinds and diagram.bare_genus == 0:
            out += [MoveInstance(R1B, (0, "L")), MoveInstance(R1B, (0, "R"))]
        if R2B in kinds and diagram.bare_genus == 0:
            out += [MoveInstance(R2B, (0, 0, "A")), MoveInstance(R2B, (0, 0, "B"))]
        return out
    flist, owner = diagram.face_index()
    alpha = diagram.alpha
    for f in flist:
        d = min(f.boundary)
        if f.sides == 1 and R1A in kinds:
            out.append(MoveInstance(R1A, (d,)))
        elif f.sides == 2 and R2A in kinds and _bigon(diagram, d):
            out.append(MoveInstance(R2A, (d,)))
        elif f.sides == 3 and R3 in kinds and _triangle(diagram, d):
            out.append(MoveInstance(R3, (d,)))
    if R1B in kinds:
        for d in range(len(alpha)):
            if d < alpha[d]:
                out.append(MoveInstance(R1B, (d, "L")))
                out.append(MoveInstance(R1B, (d, "R")))
    if R2B in kinds:
        for f in flist:
            for d1 in f.boundary:
                for d2 in f.boundary:
                    out.append(MoveInstance(R2B, (d1, d2, "A")))
                    out.append(MoveInstance(R2B, (d1, d2, "B")))
    return out


def is_applicable(diagram: CurveDiagram, move: MoveInstance) -> bool:
    try:
        _check(diagram, move)
    except StaleMove:
        return False
    return True


def _check(diagram, move):
    k, a = move.kind, move.anchor
    m = len(diagram.alpha)
    if diagram.is_bare:
        if k in (R1B, R2B) and diagram.bare_genus == 0 and a[0] == 0:
            return
        raise StaleMove(f"{k} not applicable to the crossing-free curve")
    if not all(0 <= x < m for x in a if isinstance(x, int)):
        raise StaleMove(f"anchor {a} out of range")
    if k == R1A:
        ok = _is_monogon(diagram, a[0])
    elif k == R2A:
        ok = _bigon(diagram, a[0]) is not None
    elif k == R3:
        ok = _triangle(diagram, a[0]) is not None
    elif k == R1B:
        ok = a[1] in ("L", "R")
    elif k == R2B:
        d1, d2, flag = a
        owner = diagram.face_index()[1]
        ok = owner[d1] == owner[d2] and flag in ("A", "B")
    else:
        raise StaleMove(f"unknown kind {k}")
    if not ok:
        raise StaleMove(f"move {move} not applicable")


# surgery helpers

def _remove(diagram, dead_crossings, through):
    """Delete crossings; ``through`` joins dead darts along the surviving
    strands.  Returns the compacted diagram and its trace."""
    alpha = diagram.alpha
    dead = set(dead_crossings)
    n = diagram.n
    keep = [c for c in range(n) if c not in dead]
    cmap = [None] * n
    for i, c in enumerate(keep):
        cmap[c] = i

    def new(d):
        return 4 * cmap[d >> 2] + (d & 3)

    if not keep:
        return CurveDiagram(bare_genus=genus(diagram)), Trace(cmap)
    out = [0] * (4 * len(keep))
    dart_map = {}
    for c in keep:
        for p in range(4):
            s = 4 * c + p
            x = alpha[s]
            while (x >> 2) in dead:
                x = alpha[through[x]]
            out[new(s)] = new(x)
            dart_map[s] = new(s)
    colors = tuple(diagram.colors[c] for c in keep)
    return CurveDiagram(tuple(out), colors, diagram.bare_genus), Trace(cmap, [], dart_map)


def _r1a(diagram, d):
    c = d >> 2
    base = 4 * c
    p = d & 3
    a, b = base | ((p + 1) & 3), base | ((p + 2) & 3)
    return _remove(diagram, [c], {a: b, b: a})


def _r2a(diagram, d1, d2):
    t1, s1 = theta(d1), theta(sigma_inv(d2))
    t2, s2 = theta(sigma_inv(d1)), theta(d2)
    through = {t1: s1, s1: t1, t2: s2, s2: t2}
    return _remove(diagram, [d1 >> 2, d2 >> 2], through)


def _identity_trace(diagram, created):
    n = diagram.n
    return Trace(list(range(n)), created, {d: d for d in range(4 * n)})


def _r1b(diagram, d, side):
    if diagram.is_bare:
        alpha = (3, 2, 1, 0) if side == "R" else (1, 0, 3, 2)
        return CurveDiagram(alpha, (GRAY,)), Trace([], [0], {})
    n = diagram.n
    alpha = list(diagram.alpha) + [0, 0, 0, 0]
    k = 4 * n
    a = diagram.alpha[d]
    pairs = [(d, k), (k + 2, k + 1), (k + 3, a)] if side == "R" else [(d, k), (k + 2, k + 3), (k + 1, a)]
    for x, y in pairs:
        alpha[x], alpha[y] = y, x
    return CurveDiagram(tuple(alpha), diagram.colors + (GRAY,), diagram.bare_genus), _identity_trace(diagram, [n])


_FINGER = [(0, 1), (2, 6), (4, 7), (5, 3)]  # bare-circle finger on crossings X=0..3, Y=4..7


def _r2b(diagram, d1, d2, flag):
    if diagram.is_bare:
        alpha = [0] * 8
        for x, y in _FINGER:
            alpha[x], alpha[y] = y, x
        d = CurveDiagram(tuple(alpha), (GRAY, GRAY))
        if flag == "B":
            from .codec import mirror
            d = mirror(d)
        return d, Trace([], [0, 1], {})
    n = diagram.n
    X, Y = 4 * n, 4 * n + 4
    alpha = list(diagram.alpha) + [0] * 8
    a1 = diagram.alpha[d1]
    if d1 == d2:
        # both portions on one side of one edge; flag picks which comes first
        if flag == "A":
            pairs = [(d1, X), (X + 2, Y + 2), (Y, Y + 3), (Y + 1, X + 3), (X + 1, a1)]
        else:
            pairs = [(d1, Y + 3), (Y + 1, X + 3), (X + 1, X), (X + 2, Y + 2), (Y, a1)]
    elif d2 == a1:
        # the two sides of one edge
        if flag == "A":
            pairs = [(d1, X), (X + 2, Y + 2), (Y, X + 1), (X + 3, Y + 1), (Y + 3, a1)]
        else:
            pairs = [(d1, X + 1), (X + 3, Y + 1), (Y + 3, X), (X + 2, Y + 2), (Y, a1)]
    else:
        if flag == "B":
            d1, d2 = d2, d1
        a1, a2 = diagram.alpha[d1], diagram.alpha[d2]
        pairs = [(d1, X), (X + 2, Y + 2), (Y, a1), (d2, Y + 3), (Y + 1, X + 3), (X + 1, a2)]
    for x, y in pairs:
        alpha[x], alpha[y] = y, x
    colors = diagram.colors + (GRAY, GRAY)
    return CurveDiagram(tuple(alpha), colors, diagram.bare_genus), _identity_trace(diagram, [n, n + 1])


def r3_outward(diagram, tri):
    """The three strands of a triangle as pairs of outward darts."""
    t1, t2, t3 = tri
    return [(theta(t1), theta(sigma_inv(t2))),
            (theta(t2), theta(sigma_inv(t3))),
            (theta(t3), theta(sigma_inv(t1)))]


def _r3(diagram, tri):
    mate = {}
    for o, p in r3_outward(diagram, tri):
        mate[o], mate[p] = p, o
    alpha = list(diagram.alpha)
    old = diagram.alpha
    for o in mate:
        q = old[mate[o]]
        alpha[o] = mate[q] if q in mate else q
        if q not in mate:
            alpha[q] = o
    return CurveDiagram(tuple(alpha), diagram.colors, diagram.bare_genus), _identity_trace(diagram, [])


def apply_traced(diagram: CurveDiagram, move: MoveInstance) -> tuple[CurveDiagram, Trace]:
    _check(diagram, move)
    k, a = move.kind, move.anchor
    if k == R1A:
        return _r1a(diagram, a[0])
    if k == R1B:
        return _r1b(diagram, a[0], a[1])
    if k == R2A:
        return _r2a(diagram, *_bigon(diagram, a[0]))
    if k == R2B:
        return _r2b(diagram, *a)
    return _r3(diagram, _triangle(diagram, a[0]))


def apply(diagram: CurveDiagram, move: MoveInstance) -> CurveDiagram:
    return apply_traced(diagram, move)[0]


def successors(diagram: CurveDiagram, kinds=ALL_KINDS, max_crossings=None):
    for m in enumerate_moves(diagram, kinds):
        if max_crossings is not None and diagram.n + DELTA[m.kind] > max_crossings:
            continue
        yield m, apply(diagram, m)


def support(diagram: CurveDiagram, move: MoveInstance) -> set[int]:
    """Crossings whose neighbourhood the move rewrites."""
    k, a = move.kind, move.anchor
    if diagram.is_bare:
        return set()
    if k == R1A:
        return {a[0] >> 2}
    if k == R2A:
        return {x >> 2 for x in _bigon(diagram, a[0])}
    if k == R3:
        return {x >> 2 for x in _triangle(diagram, a[0])}
    if k == R1B:
        return {a[0] >> 2, diagram.alpha[a[0]] >> 2}
    return {a[0] >> 2, diagram.alpha[a[0]] >> 2, a[1] >> 2, diagram.alpha[a[1]] >> 2}


INVERSE_KIND = {R1A: R1B, R1B: R1A, R2A: R2B, R2B: R2A, R3: R3}


def inverse(move: MoveInstance, before: CurveDiagram, after: CurveDiagram) -> MoveInstance:
    """A move on ``after`` whose result is isomorphic to ``before``."""
    from .codec import canonical_key

    target = canonical_key(before)
    _, trace = apply_traced(before, move)
    touched = {trace.crossing_map[c] for c in support(before, move) if trace.crossing_map[c] is not None}
    touched |= set(trace.created)
    cands = enumerate_moves(after, [INVERSE_KIND[move.kind]])
    # moves near the rewritten crossings first
    cands.sort(key=lambda m: 0 if (after.is_bare or support(after, m) & touched) else 1)
    for m in cands:
        if canonical_key(apply(after, m)) == target:
            return m
    raise StaleMove(f"no inverse found for {move}")


# text form, numbered by canonical traversal

def format_move(diagram: CurveDiagram, move: MoveInstance) -> str:
    from .codec import canonical_darts

    label = {d: i for i, d in enumerate(canonical_darts(diagram))}
    k, a = move.kind, move.anchor
    if diagram.is_bare:
        if k == R1B:
            return f"1b:d0:{a[1]}"
        return f"2b:d0:d0:{a[2]}"
    if k in (R1A, R2A, R3):
        return f"{k}:f{_face_number(diagram, label, a[0])}"
    if k == R1B:
        return f"1b:d{label[a[0]]}:{a[1]}"
    return f"2b:d{label[a[0]]}:d{label[a[1]]}:{a[2]}"


def _face_number(diagram, label, d):
    flist, owner = diagram.face_index()
    keyed = sorted(range(len(flist)), key=lambda i: min(label[x] for x in flist[i].boundary))
    return keyed.index(owner[d])


def parse_move(diagram: CurveDiagram, text: str) -> MoveInstance:
    from .codec import canonical_darts

    parts = text.strip().split(":")
    kind = parts[0].lower().lstrip("r")
    if kind not in ALL_KINDS:
        raise ValueError(f"bad move kind in {text!r}")
    darts = canonical_darts(diagram)

    def dart(tok):
        if not tok.startswith("d"):
            raise ValueError(f"expected dart token, got {tok!r}")
        i = int(tok[1:])
        if diagram.is_bare:
            return 0
        if not 0 <= i < len(darts):
            raise StaleMove(f"dart {tok} out of range")
        return darts[i]

    if kind in (R1A, R2A, R3):
        tok = parts[1]
        if not tok.startswith("f"):
            raise ValueError(f"expected face token, got {tok!r}")
        if diagram.is_bare:
            raise StaleMove(f"{text} not applicable to the crossing-free curve")
        label = {d: i for i, d in enumerate(darts)}
        flist, _ = diagram.face_index()
        keyed = sorted(range(len(flist)), key=lambda i: min(label[x] for x in flist[i].boundary))
        i = int(tok[1:])
        if not 0 <= i < len(keyed):
            raise StaleMove(f"face {tok} out of range")
        return MoveInstance(kind, (min(flist[keyed[i]].boundary),))
    if kind == R1B:
        return MoveInstance(kind, (dart(parts[1]), parts[2].upper()))
    return MoveInstance(kind, (dart(parts[1]), dart(parts[2]), parts[3].upper()))
