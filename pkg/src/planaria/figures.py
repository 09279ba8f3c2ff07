"""Planar drawings of the named example curves.

The eight-box curve is drawn box by box.  Each box holds a clasp: a cap
entering and leaving on the left side hooks a cap entering and leaving on
the right side, and a straight strand runs from left to right above the
clasp (even boxes) or below it (odd boxes).  Connectors join the right side
of each box to the left side of the next one, preserving heights; the last
connector wraps around underneath the row.
"""

from __future__ import annotations

from dataclasses import dataclass

from .construct import from_polyline
from .core import CurveDiagram
from .obstruction import NBOXES, BoxCertificate, ColoredGaussDiagram, edge_ports, initial_gauss_diagram, strands

WIDTH = 10
BOX = 8


@dataclass
class BoxedCurve:
    diagram: CurveDiagram
    certificate: BoxCertificate
    gauss: ColoredGaussDiagram
    # ports recorded while drawing, keyed by outgoing dart: (box, side) in travel order
    drawn_ports: dict


def _box_pieces(i):
    x0 = WIDTH * i
    s = 1 if i % 2 == 0 else -1
    return {
        1: [(x0, s * 1), (x0 + 5, s * 1), (x0 + 5, -s * 1), (x0, -s * 1)],
        2: [(x0 + BOX, 0), (x0 + 3, 0), (x0 + 3, -s * 2), (x0 + BOX, -s * 2)],
        3: [(x0, s * 3), (x0 + BOX, s * 3)],
    }


def _side_ports(pieces, i, side):
    x = WIDTH * i + (BOX if side == "R" else 0)
    pts = [p for (j, _, v) in pieces if j == i for p in (v[0], v[-1]) if p[0] == x]
    return sorted(pts, key=lambda p: -p[1])


def boxed_curve(nboxes: int = NBOXES) -> BoxedCurve:
    pieces = [(i, k, v) for i in range(nboxes) for k, v in _box_pieces(i).items()]
    conns = []
    span = WIDTH * nboxes
    for i in range(nboxes):
        right = _side_ports(pieces, i, "R")
        left = _side_ports(pieces, (i + 1) % nboxes, "L")
        for o, (a, b) in enumerate(zip(right, left)):
            if i < nboxes - 1:
                conns.append([a, b])
            else:
                oo = len(right) - o
                low = -10 - oo
                conns.append([a, (span + oo, a[1]), (span + oo, low), (-2 - oo, low), (-2 - oo, b[1]), b])
    segs = [("piece", i, v) for (i, _, v) in pieces] + [("conn", None, c) for c in conns]
    ends: dict[tuple, list[int]] = {}
    for idx, (_, _, pts) in enumerate(segs):
        for e in (0, -1):
            ends.setdefault(pts[e], []).append(idx)
    path, marks, used = [], {}, set()
    cur, here = 0, segs[0][2][0]
    while cur not in used:
        used.add(cur)
        kind, box, pts = segs[cur]
        if pts[0] != here:
            pts = pts[::-1]
        if kind == "piece":
            side = "L" if pts[0][0] == WIDTH * box else "R"
            marks.setdefault(len(path), []).append((box, side))
        path.extend(pts[:-1])
        if kind == "piece":
            side = "L" if pts[-1][0] == WIDTH * box else "R"
            marks.setdefault(len(path), []).append((box, side))
        here = pts[-1]
        (cur,) = [j for j in ends[here] if j != cur]
    if len(used) != len(segs):
        raise AssertionError("drawing is not a single closed curve")
    # a port mark at a polyline vertex belongs to the segment leaving it
    pd = from_polyline(path, {k % len(path): v for k, v in marks.items()})
    d = pd.diagram
    box_of = tuple(int(x // WIDTH) for x in pd.points[:, 0])
    cert = BoxCertificate(box_of, nboxes)
    table, vs = strands(d, cert)
    pairs = []
    anchors = []
    for b in range(nboxes):
        members = tuple(c for c in range(d.n) if box_of[c] == b)
        pairs.append(members)
        core = vs[table[b][1]].darts + vs[table[(b - 1) % nboxes][2]].darts
        anchors.append(tuple((x >> 2, x & 1) for x in core))
    gauss = initial_gauss_diagram(d, pairs, anchors)
    return BoxedCurve(d, cert, gauss, pd.edge_markers)


def drawn_ports_agree(curve: BoxedCurve) -> bool:
    """Ports met while drawing equal the ports implied by the box assignment."""
    d, box_of = curve.diagram, curve.certificate.box_of
    for a, marks in curve.drawn_ports.items():
        # the drawing records entry and exit marks of pieces, which are ports
        want = edge_ports(box_of[a >> 2], box_of[d.alpha[a] >> 2], curve.certificate.nboxes)
        if [tuple(m) for m in marks] != want:
            return False
    return True
