"""Combinatorial maps of generic immersed closed curves.

A diagram with ``n`` double points has ``4n`` darts.  Dart ``d`` sits at
crossing ``d // 4`` in counterclockwise position ``d % 4``, so the rotation
``sigma`` and the through-strand pairing ``theta`` are fixed by the numbering
and only the edge pairing ``alpha`` is stored.

The curve with no double points is represented without darts.  Its
``bare_genus`` records the ambient surface: 0 for the round circle on the
sphere, 1 for a simple essential curve on the torus (not cellularly embedded).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

BLACK = "black"
GRAY = "gray"


def sigma(d: int) -> int:
    return (d & ~3) | ((d + 1) & 3)


def sigma_inv(d: int) -> int:
    return (d & ~3) | ((d - 1) & 3)


def theta(d: int) -> int:
    return d ^ 2


def vertex_of(d: int) -> int:
    return d >> 2


class InvalidDiagram(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]

    @property
    def sides(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d >> 2 for d in self.boundary)

    @property
    def key(self) -> int:
        return min(self.boundary) if self.boundary else -1


@dataclass(frozen=True)
class CurveDiagram:
    alpha: tuple[int, ...] = ()
    colors: tuple[str, ...] = ()
    bare_genus: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.colors) != len(self.alpha) // 4:
            object.__setattr__(self, "colors", tuple(BLACK for _ in range(len(self.alpha) // 4)))

    @classmethod
    def circle(cls) -> "CurveDiagram":
        return cls()

    @classmethod
    def essential_torus_curve(cls) -> "CurveDiagram":
        return cls(bare_genus=1)

    @property
    def n(self) -> int:
        return len(self.alpha) // 4

    @property
    def is_bare(self) -> bool:
        return not self.alpha

    def recolored(self, colors) -> "CurveDiagram":
        return CurveDiagram(self.alpha, tuple(colors), self.bare_genus)

    def phi(self, d: int) -> int:
        return sigma(self.alpha[d])

    def psi(self, d: int) -> int:
        return theta(self.alpha[d])

    def face_index(self) -> tuple[list[Face], list[int]]:
        """Faces (orbits of sigma after alpha) and the face id of every dart."""
        got = self._cache.get("faces")
        if got is None:
            alpha = self.alpha
            owner = [-1] * len(alpha)
            faces = []
            for start in range(len(alpha)):
                if owner[start] >= 0:
                    continue
                orbit = []
                d = start
                while owner[d] < 0:
                    owner[d] = len(faces)
                    orbit.append(d)
                    d = sigma(alpha[d])
                faces.append(Face(tuple(orbit)))
            got = (faces, owner)
            self._cache["faces"] = got
        return got

    def __repr__(self) -> str:
        if self.is_bare:
            return f"CurveDiagram(bare, genus={self.bare_genus})"
        return f"CurveDiagram(n={self.n}, alpha={list(self.alpha)})"


def validate(diagram: CurveDiagram) -> str | None:
    """Return None when the diagram is a valid single generic curve, otherwise
    a message naming the first violated invariant."""
    alpha = diagram.alpha
    m = len(alpha)
    if m == 0:
        return None if diagram.bare_genus in (0, 1) else "bare curve genus must be 0 or 1"
    if m % 4:
        return "dart count not a multiple of 4"
    if len(diagram.colors) != m // 4:
        return "crossing_meta length mismatch"
    for c in diagram.colors:
        if c not in (BLACK, GRAY):
            return f"unknown crossing color {c!r}"
    for d, a in enumerate(alpha):
        if not 0 <= a < m:
            return f"edge_pairing out of range at dart {d}"
        if a == d:
            return "edge_pairing not fixed-point-free"
        if alpha[a] != d:
            return "edge_pairing not an involution"
    seen = [False] * m
    orbits = 0
    for start in range(m):
        if seen[start]:
            continue
        orbits += 1
        d = start
        length = 0
        while not seen[d]:
            seen[d] = True
            length += 1
            d = theta(alpha[d])
        if length != m // 2:
            return "curve is not a single closed component"
    if orbits != 2:
        return "curve is not a single closed component"
    chi = len(diagram.face_index()[0]) - diagram.n
    if chi % 2 or chi > 2:
        return "Euler characteristic not even or exceeds 2"
    return None


def check(diagram: CurveDiagram) -> CurveDiagram:
    err = validate(diagram)
    if err:
        raise InvalidDiagram(err)
    return diagram


def faces(diagram: CurveDiagram) -> list[Face]:
    if diagram.is_bare:
        if diagram.bare_genus:
            return [Face(())]
        return [Face(()), Face(())]
    return list(diagram.face_index()[0])


def genus(diagram: CurveDiagram) -> int:
    if diagram.is_bare:
        return diagram.bare_genus
    chi = len(diagram.face_index()[0]) - diagram.n
    return (2 - chi) // 2


def side_histogram(diagram: CurveDiagram) -> list[int]:
    return sorted(f.sides for f in faces(diagram))


def face_of_dart(diagram: CurveDiagram, d: int) -> int:
    return diagram.face_index()[1][d]


def traversal(diagram: CurveDiagram, start: int = 0) -> list[int]:
    """Outgoing darts in the order the curve leaves them, starting at ``start``."""
    out = []
    d = start
    while True:
        out.append(d)
        d = theta(diagram.alpha[d])
        if d == start:
            return out


def curve_order(diagram: CurveDiagram, start: int = 0) -> list[int]:
    """Crossing ids in the order they are met, one full turn of the curve."""
    if diagram.is_bare:
        raise InvalidDiagram("the embedded curve has no crossings")
    return [d >> 2 for d in traversal(diagram, start)]


def gauss_word(diagram: CurveDiagram, start: int = 0) -> list[int]:
    """curve_order relabelled 1..n by first appearance."""
    labels: dict[int, int] = {}
    word = []
    for c in curve_order(diagram, start):
        if c not in labels:
            labels[c] = len(labels) + 1
        word.append(labels[c])
    return word


def winding_numbers(diagram: CurveDiagram, outer_face: int, direction: int = 1, start: int = 0) -> list[int]:
    """Winding number of the curve around each face, zero on ``outer_face``.

    The face left of travel is one more than the face on the right; travel
    leaves through dart ``start`` when ``direction`` is +1.
    """
    if genus(diagram):
        raise ValueError("winding numbers need a planar diagram")
    flist, owner = diagram.face_index()
    step = {}
    for d in traversal(diagram, start):
        right, left = owner[d], owner[diagram.alpha[d]]
        step.setdefault(right, []).append((left, direction))
        step.setdefault(left, []).append((right, -direction))
    w = {outer_face: 0}
    stack = [outer_face]
    while stack:
        f = stack.pop()
        for g, delta in step.get(f, ()):
            if g not in w:
                w[g] = w[f] + delta
                stack.append(g)
            elif w[g] != w[f] + delta:
                raise InvalidDiagram("inconsistent winding numbers")
    return [w[i] for i in range(len(flist))]


def whitney_index(diagram: CurveDiagram, outer_face: int = 0, direction: int = 1, start: int = 0) -> int:
    """Rotation number of the planar curve obtained by puncturing ``outer_face``.

    Uses the sum of face winding numbers minus the mean winding number at
    each double point.  The bare circle gives ``direction``.
    """
    if genus(diagram):
        raise ValueError("whitney_index is defined for genus 0 only")
    if diagram.is_bare:
        return direction
    w = winding_numbers(diagram, outer_face, direction, start)
    owner = diagram.face_index()[1]
    corner_total = sum(w[owner[d]] for d in range(len(diagram.alpha)))
    assert corner_total % 4 == 0
    return sum(w) - corner_total // 4


def color_counts(diagram: CurveDiagram) -> Counter:
    return Counter(diagram.colors)
