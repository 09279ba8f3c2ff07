"""Straight-line drawings of curve diagrams as SVG or Graphviz DOT.

Every edge is split into short pieces and every inner face is filled with
a ring of helper vertices around a centre, which makes loops and parallel
edges harmless.  The split points around the outer face are pinned to a regular
polygon and every other vertex sits at the
average of its neighbours (a barycentric layout), solved with numpy.
"""

from __future__ import annotations

import math

import numpy as np

from .core import CurveDiagram, genus, traversal


SPLIT = 3  # points per edge; a monogon still gets a proper triangle


class RenderError(ValueError):
    pass


def _default_outer(diagram: CurveDiagram) -> int:
    flist, _ = diagram.face_index()
    return max(range(len(flist)), key=lambda i: (flist[i].sides, -i))


def layout(diagram: CurveDiagram, outer_face: int | None = None):
    """Positions of crossings and edge points, and the curve as a closed polyline."""
    if genus(diagram):
        raise RenderError("only curves on the sphere can be drawn in the plane")
    if diagram.is_bare:
        k = 24
        pts = [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]
        return np.array(pts), []
    flist, owner = diagram.face_index()
    if outer_face is None:
        outer_face = _default_outer(diagram)
    if not 0 <= outer_face < len(flist):
        raise RenderError(f"no face {outer_face}")
    n = diagram.n
    alpha = diagram.alpha
    # vertex ids: crossings, then points along each edge, then face interiors
    edge_pts = {}
    nxt = n
    for d in range(len(alpha)):
        if d < alpha[d]:
            pts = tuple(range(nxt, nxt + SPLIT))
            edge_pts[d] = pts
            edge_pts[alpha[d]] = pts[::-1]
            nxt += SPLIT
    inner = [i for i in range(len(flist)) if i != outer_face]
    nv = nxt + sum(SPLIT * flist[i].sides + 1 for i in inner)
    nbrs = [[] for _ in range(nv)]

    def join(a, b):
        nbrs[a].append(b)
        nbrs[b].append(a)

    for d in range(len(alpha)):
        if d < alpha[d]:
            chain = [d >> 2, *edge_pts[d], alpha[d] >> 2]
            for a, b in zip(chain, chain[1:]):
                join(a, b)

    def edge_ring(face):
        # edge points around a face, in order; crossings are left out so
        # a face that meets a crossing twice still gives a simple cycle
        out = []
        for d in flist[face].boundary:
            out += edge_pts[d]
        return out

    # each inner face holds a second ring and a centre; with only a centre,
    # a loop hanging off one crossing could be cut away by two vertices and
    # the barycentric layout would flatten it onto a segment
    for i in inner:
        outer_ring = edge_ring(i)
        k = len(outer_ring)
        ring2 = list(range(nxt, nxt + k))
        centre = nxt + k
        nxt += k + 1
        for j in range(k):
            join(outer_ring[j], ring2[j])
            join(ring2[j], ring2[(j + 1) % k])
            join(ring2[j], centre)
    ring = edge_ring(outer_face)
    m = len(ring)
    pinned = {}
    for j, v in enumerate(ring):
        ang = 2 * math.pi * j / m
        pinned[v] = (math.cos(ang), -math.sin(ang))
    free = [v for v in range(nv) if v not in pinned]
    idx = {v: i for i, v in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    b = np.zeros((len(free), 2))
    for v in free:
        i = idx[v]
        A[i, i] = len(nbrs[v])
        for u in nbrs[v]:
            if u in pinned:
                b[i] += pinned[u]
            else:
                A[i, idx[u]] -= 1
    pos = np.zeros((nv, 2))
    for v, xy in pinned.items():
        pos[v] = xy
    if free:
        pos[free] = np.linalg.solve(A, b)
    path = []
    for d in traversal(diagram, 0):
        path += [d >> 2, *edge_pts[d]]
    return pos, path


def polyline(diagram: CurveDiagram, outer_face: int | None = None) -> np.ndarray:
    pos, path = layout(diagram, outer_face)
    if not path:
        return pos
    return pos[path]


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def to_svg(diagram: CurveDiagram, outer_face: int | None = None, size: int = 400) -> str:
    pts = polyline(diagram, outer_face)
    half = size / 2
    scale = 0.45 * size
    coords = [(half + scale * x, half + scale * y) for x, y in pts]
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords) + " Z"
    dots = ""
    if not diagram.is_bare:
        pos, _ = layout(diagram, outer_face)
        dots = "".join(
            f'<circle cx="{_fmt(half + scale * pos[c][0])}" cy="{_fmt(half + scale * pos[c][1])}" r="3"/>\n'
            for c in range(diagram.n))
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n'
            f'<path d="{d}" fill="none" stroke="black" stroke-width="1.5"/>\n'
            f'{dots}</svg>\n')


def to_dot(diagram: CurveDiagram, outer_face: int | None = None) -> str:
    lines = ["graph curve {", "  node [shape=point];"]
    if diagram.is_bare:
        lines.append("  c [shape=circle, label=\"\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"
    pos, path = layout(diagram, outer_face)
    used = sorted(set(path))
    for v in used:
        x, y = pos[v]
        shape = "" if v < diagram.n else ", width=0"
        lines.append(f'  v{v} [pos="{_fmt(4 * x)},{_fmt(-4 * y)}!"{shape}];')
    m = len(path)
    for i in range(m):
        lines.append(f"  v{path[i]} -- v{path[(i + 1) % m]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_self_intersections(points) -> int:
    """Distinct points where non-adjacent segments of a closed polyline meet."""
    pts = np.asarray(points, dtype=float)
    m = len(pts)
    segs = [(pts[i], pts[(i + 1) % m]) for i in range(m)]
    hits = set()
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            got = _meet(*segs[i], *segs[j])
            if got is not None:
                hits.add((round(got[0], 9), round(got[1], 9)))
    return len(hits)


def _meet(p, q, r, s):
    d1, d2 = q - p, s - r
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-14 * np.linalg.norm(d1) * np.linalg.norm(d2) or den == 0:
        return None
    w = r - p
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    eps = 1e-9
    if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
        x = p + t * d1
        return float(x[0]), float(x[1])
    return None
