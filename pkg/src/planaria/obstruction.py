"""Two invariants that keep the eight-box curve at sixteen or more crossings.

Box certificates
----------------
Crossings are assigned to eight boxes arranged in a ring.  The curve leaves a
box through its left or right side and enters the neighbouring box through
the facing side; the crossing-free arcs between boxes are connectors.  An
edge between crossings in the same box stays inside it, an edge between
neighbouring boxes crosses one connector, and an edge between boxes two
apart passes straight through the middle box.  So the sides crossed by the
curve (the ports) are determined by the box assignment alone.

Each pass of the curve through a box is a strand: left-to-left is strand 1,
right-to-right strand 2, and left-to-right strand 3.  A certificate is valid
when every box holds exactly one strand of each type, strand 3 is attached
to strand 2 of the left neighbour and strand 1 of the right neighbour,
strands 1 and 2 of each box cross exactly twice, and the two faces that
meet every connector gap (the starred faces) have at least four sides.

Colored Gauss diagrams
----------------------
Chord endpoints are tokens ``(crossing, branch)`` where the branch is the
strand through positions 0/2 or 1/3 of the crossing; both survive every
move that keeps the crossing.  Black chords come in designated pairs.
Erasing gray chords must leave the reference black word up to the order
inside each adjacent pair, and each gray chord must have both ends in one
of eight arcs of the circle.  Each arc is anchored at a core of four black
endpoints: strand 1 of one box and strand 2 of its left neighbour, which a
connector joins directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BLACK, GRAY, CurveDiagram, theta, traversal
from .moves import R1A, R1B, R3, MoveInstance, Trace, _triangle, apply_traced

NBOXES = 8


class TransportFailure(Exception):
    """No case of the box-adjustment analysis produced a valid certificate."""


class CertificateError(ValueError):
    """A certificate refers to crossings or faces the diagram does not have."""


@dataclass(frozen=True)
class Verdict:
    ok: bool
    property: str | None = None
    location: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"violated({self.property}: {self.location})"


OK = Verdict(True)


@dataclass(frozen=True)
class BoxCertificate:
    box_of: tuple[int, ...]
    nboxes: int = NBOXES


@dataclass
class Visit:
    box: int
    entry: str
    exit: str
    darts: list = field(default_factory=list)  # outgoing dart after each crossing passage

    @property
    def strand(self) -> int:
        if self.entry == self.exit:
            return 1 if self.entry == "L" else 2
        return 3


def _ring(a, b, nb):
    """Signed ring step from box a to box b in (-nb/2, nb/2]."""
    s = (b - a) % nb
    return s - nb if s > nb // 2 else s


def edge_ports(b1: int, b2: int, nb: int = NBOXES):
    """Sides crossed by an edge from a crossing in box ``b1`` to one in ``b2``."""
    step = _ring(b1, b2, nb)
    if step == 0:
        return []
    if abs(step) > 2:
        return None
    out, here = [], b1
    direction = 1 if step > 0 else -1
    for _ in range(abs(step)):
        nxt = (here + direction) % nb
        out += [(here, "R" if direction > 0 else "L"), (nxt, "L" if direction > 0 else "R")]
        here = nxt
    return out


def visits(diagram: CurveDiagram, cert: BoxCertificate):
    """Strands of the certificate in travel order, or a Verdict on failure."""
    box_of = cert.box_of
    nb = cert.nboxes
    if len(box_of) != diagram.n:
        raise CertificateError(f"certificate covers {len(box_of)} crossings, diagram has {diagram.n}")
    if any(not 0 <= b < nb for b in box_of):
        raise CertificateError("box index out of range")
    if diagram.is_bare:
        return Verdict(False, "P1", "no crossings")
    order = traversal(diagram, 0)
    # rotate so the walk starts right after a port
    m = len(order)
    start = None
    for i in range(m):
        d = order[i]
        if box_of[d >> 2] != box_of[diagram.alpha[d] >> 2]:
            start = (i + 1) % m
            break
    if start is None:
        return Verdict(False, "P1", "curve never leaves a box")
    order = order[start:] + order[:start]
    out: list[Visit] = []
    prev = order[-1]
    ports = edge_ports(box_of[prev >> 2], box_of[diagram.alpha[prev] >> 2], nb)
    if ports is None:
        return Verdict(False, "P2", f"edge from crossing {prev >> 2} skips more than one box")
    cur = Visit(ports[-1][0], ports[-1][1], "")
    for d in order:
        c = d >> 2
        if box_of[c] != cur.box:
            return Verdict(False, "P1", f"crossing {c} outside its strand's box")
        cur.darts.append(d)
        ports = edge_ports(box_of[c], box_of[diagram.alpha[d] >> 2], nb)
        if ports is None:
            return Verdict(False, "P2", f"edge from crossing {c} skips more than one box")
        if not ports:
            continue
        cur.exit = ports[0][1]
        out.append(cur)
        # boxes passed straight through carry crossing-free strand 3 visits
        for j in range(1, len(ports) - 1, 2):
            out.append(Visit(ports[j][0], ports[j][1], ports[j + 1][1]))
        cur = Visit(ports[-1][0], ports[-1][1], "")
    return out


def strands(diagram: CurveDiagram, cert: BoxCertificate):
    """Per box, the visit index of strands 1, 2, 3; or a Verdict."""
    vs = visits(diagram, cert)
    if isinstance(vs, Verdict):
        return vs, None
    table: dict[int, dict[int, int]] = {b: {} for b in range(cert.nboxes)}
    for i, v in enumerate(vs):
        if v.strand in table[v.box]:
            return Verdict(False, "P1", f"box {v.box} has two strands of type {v.strand}"), vs
        table[v.box][v.strand] = i
    for b, t in table.items():
        if len(t) != 3:
            missing = sorted({1, 2, 3} - set(t))
            return Verdict(False, "P1", f"box {b} lacks strand(s) {missing}"), vs
    return table, vs


def connector_faces(diagram: CurveDiagram, cert: BoxCertificate):
    """Face id -> set of connector gaps (pairs of neighbouring boxes) along its boundary."""
    flist, owner = diagram.face_index()
    touch: dict[int, set] = {}
    for d in range(len(diagram.alpha)):
        a = diagram.alpha[d]
        ports = edge_ports(cert.box_of[d >> 2], cert.box_of[a >> 2], cert.nboxes) or []
        for j in range(0, len(ports), 2):
            gap = frozenset((ports[j][0], ports[j + 1][0]))
            touch.setdefault(owner[d], set()).add(gap)
    return touch


def starred_faces(diagram: CurveDiagram, cert: BoxCertificate) -> list[int]:
    touch = connector_faces(diagram, cert)
    return sorted(f for f, gaps in touch.items() if len(gaps) == cert.nboxes)


def check_certificate(diagram: CurveDiagram, cert: BoxCertificate, property4: bool = True) -> Verdict:
    table, vs = strands(diagram, cert)
    if isinstance(table, Verdict):
        return table
    nb = cert.nboxes
    # property 2: strand 3 attaches to strand 2 on the left, strand 1 on the right
    m = len(vs)
    for b in range(nb):
        i = table[b][3]
        v = vs[i]
        left_nb = vs[(i - 1) % m] if v.entry == "L" else vs[(i + 1) % m]
        right_nb = vs[(i + 1) % m] if v.entry == "L" else vs[(i - 1) % m]
        if left_nb.box != (b - 1) % nb or left_nb.strand != 2:
            return Verdict(False, "P2", f"box {b} strand 3 left end meets box {left_nb.box} strand {left_nb.strand}")
        if right_nb.box != (b + 1) % nb or right_nb.strand != 1:
            return Verdict(False, "P2", f"box {b} strand 3 right end meets box {right_nb.box} strand {right_nb.strand}")
    # property 3: strands 1 and 2 cross exactly twice
    for b in range(nb):
        on1 = {d >> 2 for d in vs[table[b][1]].darts}
        on2 = {d >> 2 for d in vs[table[b][2]].darts}
        k = len(on1 & on2)
        if k != 2:
            return Verdict(False, "P3", f"box {b} strands 1 and 2 cross {k} times")
    if property4:
        v = check_property4(diagram, cert)
        if not v:
            return v
    return OK


def check_property4(diagram: CurveDiagram, cert: BoxCertificate) -> Verdict:
    stars = starred_faces(diagram, cert)
    if len(stars) != 2:
        return Verdict(False, "P4", f"{len(stars)} faces meet every connector gap, expected 2")
    flist, _ = diagram.face_index()
    for f in stars:
        if flist[f].sides < 4:
            return Verdict(False, "P4", f"starred face {f} has {flist[f].sides} sides")
    return OK


# transport along moves

def _remap(cert: BoxCertificate, trace: Trace, created_boxes) -> BoxCertificate:
    n_new = sum(1 for x in trace.crossing_map if x is not None) + len(trace.created)
    box = [None] * n_new
    for old, new in enumerate(trace.crossing_map):
        if new is not None:
            box[new] = cert.box_of[old]
    for c, b in zip(trace.created, created_boxes):
        box[c] = b
    return BoxCertificate(tuple(box), cert.nboxes)


def _r3_candidates(diagram, cert, tri, sabotage=False):
    """Box assignments for the triangle's crossings, in the order the box
    adjustment tries them: unchanged, then every way of pulling isolated
    corners into a neighbouring box (at most two reassignments)."""
    cs = [t >> 2 for t in tri]
    boxes = [cert.box_of[c] for c in cs]
    yield cert
    targets = []
    for b in boxes:
        if b not in targets:
            targets.append(b)
    for target in targets:
        if sabotage:
            continue
        moved = [c for c in cs if cert.box_of[c] != target]
        if len(moved) > 2:
            continue
        if any(abs(_ring(cert.box_of[c], target, cert.nboxes)) != 1 for c in moved):
            continue
        box = list(cert.box_of)
        for c in moved:
            box[c] = target
        yield BoxCertificate(tuple(box), cert.nboxes)


def transport(diagram: CurveDiagram, cert: BoxCertificate, move: MoveInstance,
              result: CurveDiagram | None = None, trace: Trace | None = None,
              sabotage: bool = False) -> BoxCertificate:
    """Certificate for the diagram after ``move``.

    Moves inside one box keep every assignment; a 1b kink joins the box of
    the crossing it is drawn next to; a triangle straddling boxes is first
    pulled into one box by reassigning its isolated corners.
    """
    if move.kind not in (R1A, R1B, R3):
        raise ValueError(f"transport handles 1a, 1b and 3 only, got {move.kind}")
    if result is None or trace is None:
        result, trace = apply_traced(diagram, move)
    if move.kind == R1A:
        new = _remap(cert, trace, [])
        if check_certificate(result, new):
            return new
        raise TransportFailure(f"1a at crossing {move.anchor[0] >> 2}: {check_certificate(result, new)}")
    if move.kind == R1B:
        if diagram.is_bare:
            raise TransportFailure("no certificate on the crossing-free curve")
        host = move.anchor[0] >> 2
        b = cert.box_of[host]
        if sabotage:
            b = (b + 3) % cert.nboxes
        new = _remap(cert, trace, [b])
        v = check_certificate(result, new)
        if v:
            return new
        raise TransportFailure(f"1b next to crossing {host}: {v}")
    tri = _triangle(diagram, move.anchor[0])
    last = None
    for cand in _r3_candidates(diagram, cert, tri, sabotage):
        if cand is not cert and not check_certificate(diagram, cand):
            continue
        new = _remap(cand, trace, [])
        v = check_certificate(result, new)
        if v:
            return new
        last = v
    raise TransportFailure(f"3 on triangle {[t >> 2 for t in tri]}: {last}")


def emit_certificate(diagram: CurveDiagram, cert: BoxCertificate) -> str:
    lines = []
    for b in range(cert.nboxes):
        members = " ".join(f"c{c}" for c in range(diagram.n) if cert.box_of[c] == b)
        lines.append(f"box {b}: {members}".rstrip())
    stars = starred_faces(diagram, cert)
    flist, _ = diagram.face_index()
    lines.append("star " + " ".join(f"f{min(flist[f].boundary)}" for f in stars))
    return "\n".join(lines) + "\n"


def parse_certificate(diagram: CurveDiagram, text: str) -> BoxCertificate:
    box = [None] * diagram.n
    nb = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("star"):
            continue
        head, _, rest = line.partition(":")
        parts = head.split()
        if len(parts) != 2 or parts[0] != "box":
            raise CertificateError(f"bad certificate line {line!r}")
        b = int(parts[1])
        nb = max(nb, b + 1)
        for tok in rest.split():
            c = int(tok.lstrip("c"))
            if not 0 <= c < diagram.n:
                raise CertificateError(f"dangling crossing reference {tok}")
            box[c] = b
    if any(b is None for b in box):
        raise CertificateError("crossing without a box")
    return BoxCertificate(tuple(box), max(nb, NBOXES))


def find_certificate(diagram: CurveDiagram, nboxes: int = NBOXES, budget: int = 2_000_000):
    """Brute-force search for a valid certificate (debug oracle).

    Boxes are assigned in travel order; consecutive crossings must lie within
    two boxes of each other, no box may exceed three strands, and crossing 0
    is pinned to box 0 (the ring can be rotated).
    """
    if diagram.is_bare:
        return None
    order = [d >> 2 for d in traversal(diagram, 0)]
    n = diagram.n
    box = [None] * n
    nodes = 0

    def rec(i):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise TimeoutError("certificate search budget exhausted")
        if i == len(order):
            cert = BoxCertificate(tuple(box), nboxes)
            return cert if check_certificate(diagram, cert) else None
        c = order[i]
        prev = box[order[i - 1]] if i else None
        if box[c] is not None:
            if prev is not None and abs(_ring(prev, box[c], nboxes)) > 2:
                return None
            return rec(i + 1)
        options = range(nboxes) if prev is None else sorted(
            {(prev + s) % nboxes for s in (0, 1, -1, 2, -2)})
        if i == 0:
            options = [0]
        for b in options:
            if sum(1 for x in box if x == b) >= 2 + (n - 2 * nboxes):
                continue
            box[c] = b
            got = rec(i + 1)
            if got:
                return got
            box[c] = None
        return None

    return rec(0)


# colored Gauss diagrams

@dataclass(frozen=True)
class ColoredGaussDiagram:
    tokens: tuple  # cyclic sequence of (crossing, branch)
    colors: tuple  # per crossing
    pairs: tuple  # designated black pairs of crossing ids
    anchors: tuple  # per region, the black endpoint tokens of its core
    reference: tuple  # black word, as pair blocks, of the starting diagram

    def region_arcs(self):
        """Per region, the set of token positions it covers.

        A region's core is its run of black tokens; the region extends
        through the gaps on both sides up to the neighbouring cores, so
        adjacent regions share the gap between them.
        """
        m = len(self.tokens)
        black = [i for i, t in enumerate(self.tokens) if self.colors[t[0]] == BLACK]
        rank = {self.tokens[i]: k for k, i in enumerate(black)}
        nbk = len(black)
        spans = []
        for core in self.anchors:
            ks = [rank[t] for t in core if t in rank]
            if not ks:
                continue
            first = _block_start(ks, nbk)
            last = max(ks, key=lambda k: (k - first) % nbk)
            spans.append((black[first], black[last]))
        spans.sort()
        arcs = []
        r = len(spans)
        for k in range(r):
            lo = spans[k - 1][1]
            hi = spans[(k + 1) % r][0]
            width = (hi - lo) % m or m
            arcs.append({(lo + j) % m for j in range(1, width)})
        return arcs


def _block_start(positions, m):
    """First position of a cyclic run of positions that may wrap around."""
    ps = sorted(positions)
    for i, p in enumerate(ps):
        if (p - 1) % m not in ps:
            return p
    return ps[0]


def tokens_of(diagram: CurveDiagram):
    return tuple((d >> 2, d & 1) for d in traversal(diagram, 0))


def _black_blocks(tokens, colors, pairs):
    """Black word as a list of blocks: a designated pair met back to back
    becomes one frozenset block, anything else a singleton."""
    partner = {}
    for a, b in pairs:
        partner[a], partner[b] = b, a
    black = [t for t in tokens if colors[t[0]] == BLACK]
    m = len(black)
    if not m:
        return []
    # start at a position that does not split a block
    start = 0
    for i in range(m):
        prev = black[(i - 1) % m]
        if partner.get(black[i][0]) != prev[0]:
            start = i
            break
    seq = black[start:] + black[:start]
    out = []
    i = 0
    while i < m:
        t = seq[i]
        if i + 1 < m and partner.get(t[0]) == seq[i + 1][0]:
            out.append(frozenset((t, seq[i + 1])))
            i += 2
        else:
            out.append(frozenset((t,)))
            i += 1
    return out


def _cyclic_equal(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    m = len(a)
    for seq in (b, b[::-1]):
        for r in range(m):
            if all(a[i] == seq[(i + r) % m] for i in range(m)):
                return True
    return False


def initial_gauss_diagram(diagram: CurveDiagram, pairs, anchors) -> ColoredGaussDiagram:
    tokens = tokens_of(diagram)
    ref = tuple(_black_blocks(tokens, diagram.colors, pairs))
    return ColoredGaussDiagram(tokens, diagram.colors, tuple(pairs), tuple(anchors), ref)


def check_gauss_predicate(g: ColoredGaussDiagram) -> Verdict:
    blocks = _black_blocks(g.tokens, g.colors, g.pairs)
    nblack = sum(1 for c in g.colors if c == BLACK)
    if nblack != 2 * len(g.pairs):
        return Verdict(False, "clause1", f"{nblack} black chords, expected {2 * len(g.pairs)}")
    if not _cyclic_equal(list(g.reference), blocks):
        return Verdict(False, "clause1", "black chords differ from the reference beyond pair crossings")
    arcs = g.region_arcs()
    where: dict[int, list[int]] = {}
    for i, (c, _) in enumerate(g.tokens):
        if g.colors[c] == GRAY:
            where.setdefault(c, []).append(i)
    for c, ps in where.items():
        if not any(all(p in arc for p in ps) for arc in arcs):
            return Verdict(False, "clause2", f"gray chord {c} leaves every region")
    return OK


def lift_move(g: ColoredGaussDiagram, move: MoveInstance, before: CurveDiagram,
              after: CurveDiagram, trace: Trace | None = None) -> ColoredGaussDiagram:
    """Carry the colored Gauss diagram across a move by crossing identity."""
    if move.kind not in (R1A, R1B, R3):
        raise ValueError(f"lift handles 1a, 1b and 3 only, got {move.kind}")
    if trace is None:
        _, trace = apply_traced(before, move)
    if tuple(before.colors) != tuple(g.colors):
        raise ValueError("color bookkeeping disagrees with the diagram")
    cmap = trace.crossing_map
    for c in range(before.n):
        if cmap[c] is None and before.colors[c] == BLACK:
            raise ValueError(f"move deletes black chord {c}")
    pairs = tuple((cmap[a], cmap[b]) for a, b in g.pairs)
    anchors = tuple(tuple((cmap[c], br) for c, br in block) for block in g.anchors)
    return ColoredGaussDiagram(tokens_of(after), after.colors, pairs, anchors, _relabel_ref(g.reference, cmap))


def _relabel_ref(ref, cmap):
    return tuple(frozenset((cmap[c], br) for c, br in block) for block in ref)


# exhaustive verification over the reachable graph

@dataclass
class VerifyReport:
    status: str
    states: int
    edges: int
    n_min: int | None
    transport_failures: list = field(default_factory=list)
    gauss_violations: list = field(default_factory=list)
    certificate_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "exhausted" and not (
            self.transport_failures or self.gauss_violations or self.certificate_violations)

    def as_dict(self):
        return {
            "status": self.status,
            "n_min": self.n_min,
            "states": self.states,
            "edges": self.edges,
            "violations": {
                "transport": len(self.transport_failures),
                "gauss": len(self.gauss_violations),
                "certificate": len(self.certificate_violations),
            },
        }


def verify_boxed(start: CurveDiagram, cert: BoxCertificate, gauss: ColoredGaussDiagram,
                 max_crossings: int, mechanism: str = "both", max_states: int = 1_000_000,
                 sabotage: bool = False, keep: int = 20) -> VerifyReport:
    """Explore the {1a,1b,3} graph from ``start`` and check both invariants.

    The certificate and Gauss diagram of each class are the ones carried
    along the tree edge that first reached it.  Every other edge is checked
    too: its transported certificate must be valid on the target.
    """
    from .codec import canonical_key
    from .moves import ONE_THREE
    from .search import SearchConfig, explore

    use_box = mechanism in ("both", "cert")
    use_gauss = mechanism in ("both", "gauss")
    if not (use_box or use_gauss):
        raise ValueError(f"unknown mechanism {mechanism!r}")
    start = start.recolored(gauss.colors)
    report = VerifyReport("", 0, 0, None)

    def note(bucket, msg):
        if len(bucket) < keep:
            bucket.append(msg)
        else:
            bucket.append(None)

    if use_box and not check_certificate(start, cert):
        note(report.certificate_violations, f"start: {check_certificate(start, cert)}")
    if use_gauss and not check_gauss_predicate(gauss):
        note(report.gauss_violations, f"start: {check_gauss_predicate(gauss)}")
    # explore() calls the edge visitor before the visitor of a newly reached
    # class, so pending data for the target is keyed by its canonical key
    def on_edge(src, move, dst):
        k_src = canonical_key(src, colors=True)
        k_dst = canonical_key(dst, colors=True)
        result, trace = apply_traced(src, move)
        first = k_dst not in seen
        seen.add(k_dst)
        if use_box:
            c = certs.get(k_src)
            if c is not None:
                try:
                    new = transport(src, c, move, result, trace, sabotage=sabotage)
                    if first:
                        certs[k_dst] = new
                except TransportFailure as exc:
                    note(report.transport_failures, str(exc))
        if use_gauss:
            g = gds.get(k_src)
            if g is not None:
                try:
                    new = lift_move(g, move, src, result, trace)
                except ValueError as exc:
                    note(report.gauss_violations, str(exc))
                else:
                    v = check_gauss_predicate(new)
                    if v:
                        if first:
                            gds[k_dst] = new
                    else:
                        note(report.gauss_violations, f"{move}: {v}")

    k0 = canonical_key(start, colors=True)
    certs = {k0: cert}
    gds = {k0: gauss}
    seen = {k0}
    config = SearchConfig(kinds=ONE_THREE, max_crossings=max_crossings, max_states=max_states,
                          stop_at_simplified=False, colored=True)
    res = explore(start, config, edge_visitor=on_edge)
    report.status = res.status
    report.states = res.visited
    report.edges = res.edges
    report.n_min = res.min_crossings
    return report
