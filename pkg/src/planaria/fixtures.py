"""Named example curves, tangles and move sequences.

The bundled ``data/fixtures.quad`` holds every named picture and
``data/sequences.txt`` the move sequences that go with them.  Set
``PLANARIA_FIXTURES`` to a directory (or to a fixtures file next to its
``sequences.txt``) to load other copies.  ``python -m planaria.fixtures``
rebuilds both files from the constructions in this package.
"""

from __future__ import annotations

import os
import re
import sys
from importlib import resources
from pathlib import Path

from .codec import BLACK, GRAY, ParseError, emit_quad, parse_quad, realize, _strip_comments
from .core import CurveDiagram, check
from .moves import MoveInstance, apply, format_move, parse_move

NAMES = ("lemma6.left", "lemma6.right", "tangle.double_bigon", "theorem3.sub1a", "theorem3.sub3",
         "fig3.main", "fig4.expanded", "small.seed", "torus.left", "torus.right")

SEQUENCE_NAMES = ("lemma6", "theorem3.sub1a", "theorem3.sub3")

ENV = "PLANARIA_FIXTURES"

_BOUNDARY = re.compile(r"^B([0-3])$")


# tangles in quad form: boundary slots are the labels B0..B3

def emit_tangle(tangle) -> str:
    label = {}
    for k, d in enumerate(tangle.slots):
        label[d] = f"B{k}"
    nxt = 1
    lines = []
    for c in range(tangle.n):
        ends = []
        for p in range(4):
            d = 4 * c + p
            if d not in label:
                label[d] = label[tangle.alpha[d]] = str(nxt)
                nxt += 1
            ends.append(label[d])
        lines.append(f"X {c}: {' '.join(ends)}")
    return "\n".join(lines) + "\n"


def parse_tangle(text: str):
    from .transforms import LocalTangle

    rows = []
    for raw in _strip_comments(text):
        line = raw.strip()
        if not line:
            continue
        m = re.match(r"^X\s+(\d+)\s*:\s*(.*)$", line)
        if not m:
            raise ParseError(f"bad tangle line: {line!r}")
        ends = m.group(2).split()
        if len(ends) != 4:
            raise ParseError(f"crossing {m.group(1)} has {len(ends)} edge ends, expected 4")
        rows.append((int(m.group(1)), ends))
    rows.sort()
    where: dict[str, list[int]] = {}
    slots = [None] * 4
    for i, (_, ends) in enumerate(rows):
        for p, lab in enumerate(ends):
            b = _BOUNDARY.match(lab)
            if b:
                if slots[int(b.group(1))] is not None:
                    raise ParseError(f"boundary slot {lab} used twice")
                slots[int(b.group(1))] = 4 * i + p
            else:
                where.setdefault(lab, []).append(4 * i + p)
    if any(s is None for s in slots):
        raise ParseError("a tangle needs boundary slots B0..B3")
    alpha = {}
    for lab, ds in where.items():
        if len(ds) != 2:
            raise ParseError(f"edge-end label {lab!r} appears {len(ds)} times (dangling edge)")
        a, b = ds
        alpha[a], alpha[b] = b, a
    return LocalTangle(len(rows), alpha, tuple(slots))


def _blocks(text: str) -> dict[str, str]:
    blocks: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        if raw.startswith("@"):
            current = raw[1:].strip()
            if current in blocks:
                raise ParseError(f"duplicate fixture name {current!r}")
            blocks[current] = []
        elif current is not None:
            blocks[current].append(raw)
    return {k: "\n".join(v) for k, v in blocks.items()}


def fixtures_path() -> Path:
    override = os.environ.get(ENV)
    if override:
        p = Path(override)
        return p / "fixtures.quad" if p.is_dir() else p
    return Path(str(resources.files("planaria") / "data" / "fixtures.quad"))


def sequences_path() -> Path:
    return fixtures_path().with_name("sequences.txt")


def load_fixtures(path=None) -> dict:
    """Name -> CurveDiagram, or LocalTangle for names starting ``tangle.``."""
    text = Path(path or fixtures_path()).read_text()
    out = {}
    for name, body in _blocks(text).items():
        out[name] = parse_tangle(body) if name.startswith("tangle.") else parse_quad(body)
    return out


def fixture(name: str, path=None):
    fx = load_fixtures(path)
    if name not in fx:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(fx))}")
    return fx[name]


def load_sequences(path=None) -> dict:
    """Name -> (start fixture name, goal fixture name, move lines)."""
    p = Path(path) if path else sequences_path()
    out = {}
    for name, body in _blocks(p.read_text()).items():
        start = goal = None
        moves = []
        for raw in body.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("start "):
                start = line.split(None, 1)[1]
            elif line.startswith("goal "):
                goal = line.split(None, 1)[1]
            else:
                moves.append(line)
        out[name] = (start, goal, moves)
    return out


def parse_sequence(start: CurveDiagram, lines) -> list[MoveInstance]:
    """Moves in text form, each read against the state it applies to."""
    seq = []
    d = start
    for line in lines:
        m = parse_move(d, line)
        seq.append(m)
        d = apply(d, m)
    return seq


def format_sequence(start: CurveDiagram, seq) -> list[str]:
    out = []
    d = start
    for m in seq:
        out.append(format_move(d, m))
        d = apply(d, m)
    return out


def sequence(name: str, fixtures=None, path=None):
    """(start diagram, moves, goal diagram) for a named sequence."""
    fixtures = fixtures or load_fixtures()
    start_name, goal_name, lines = load_sequences(path)[name]
    start = fixtures[start_name]
    return start, parse_sequence(start, lines), fixtures[goal_name]


# building the bundle from first principles

def trefoil_shadow() -> CurveDiagram:
    return realize([1, 2, 3, 1, 2, 3])


def expanded_trefoil_word() -> list[int]:
    """Gauss word of the trefoil shadow with every double point replaced by a
    twist of three, both strands running through the twist the same way."""
    word = []
    for c in [1, 2, 3, 1, 2, 3]:
        word += [3 * c - 2, 3 * c - 1, 3 * c]
    return word


def guarded_figure_eight(tangle) -> tuple[CurveDiagram, set]:
    """``tangle`` closed up by joining slots 2-3 and 0-1, each closing arc
    carrying a guard kink (colored gray)."""
    from .moves import R1B
    from .transforms import substitute

    base = CurveDiagram((1, 0, 3, 2))
    base = apply(base, MoveInstance(R1B, (0, "L")))
    base = apply(base, MoveInstance(R1B, (2, "L")))
    d = substitute(base, 0, tangle, 0)
    colors = tuple(GRAY if c in (1, 2) else BLACK for c in range(d.n))
    return d.recolored(colors), {1, 2}


def _guarded_kink_pair():
    """A kink (crossing 0) whose closing arc carries a guard kink (crossing 1)."""
    from .moves import R1B

    kink = CurveDiagram((3, 2, 1, 0))
    d = apply(kink, MoveInstance(R1B, (0, "L")))
    return d.recolored((BLACK, GRAY)), {1}


def _guarded_trefoil():
    """Trefoil shadow with guard kinks on the edges of one triangle, so the
    other triangle is a local picture for move 3."""
    from .moves import R1B

    d = trefoil_shadow()
    flist, owner = d.face_index()
    tris = sorted((f for f in flist if f.sides == 3), key=lambda f: min(f.boundary))
    guard_tri = tris[1]
    guards = set()
    for e in guard_tri.boundary:
        n = d.n
        d = apply(d, MoveInstance(R1B, (e, "L")))
        guards.add(n)
    colors = tuple(GRAY if c in guards else BLACK for c in range(d.n))
    return d.recolored(colors), guards, min(tris[0].boundary)


def build():
    """Every fixture and sequence, computed from the constructions."""
    from .figures import boxed_curve
    from .moves import R1A, R3, apply_traced
    from .torus import CLASP_ON_TORUS, ESSENTIAL
    from .transforms import DOUBLE_BIGON, guarded_search, rotated, substitute

    fx = {}
    left, guards = guarded_figure_eight(rotated(DOUBLE_BIGON, 1))
    right, _ = guarded_figure_eight(DOUBLE_BIGON)
    fx["lemma6.left"], fx["lemma6.right"] = left, right
    fx["tangle.double_bigon"] = DOUBLE_BIGON
    seqs = {}
    seqs["lemma6"] = ("lemma6.left", "lemma6.right",
                      guarded_search(left, right, guards, guards, left.n + 1))
    # substitute for move 1a on an expanded kink
    kp, g1 = _guarded_kink_pair()
    start = substitute(kp, 0, DOUBLE_BIGON, None, BLACK)
    goal, tr = apply_traced(kp, MoveInstance(R1A, (min(d for d in range(4) if kp.alpha[d] == ((d - 1) & 3)),)))
    g1_goal = {tr.crossing_map[g] for g in g1}
    fx["theorem3.sub1a"] = start
    fx["theorem3.sub1a.goal"] = goal
    seqs["theorem3.sub1a"] = ("theorem3.sub1a", "theorem3.sub1a.goal",
                              guarded_search(start, goal, g1, g1_goal, start.n + 2))
    # substitute for move 3 with one expanded corner
    gt, g3, tri_dart = _guarded_trefoil()
    corner = tri_dart >> 2
    start = substitute(gt, corner, DOUBLE_BIGON, None, BLACK)
    after, tr = apply_traced(gt, MoveInstance(R3, (tri_dart,)))
    goal = substitute(after, tr.crossing_map[corner], DOUBLE_BIGON, None, BLACK)
    g3_goal = {tr.crossing_map[g] for g in g3}
    fx["theorem3.sub3"] = start
    fx["theorem3.sub3.goal"] = goal
    seqs["theorem3.sub3"] = ("theorem3.sub3", "theorem3.sub3.goal",
                             guarded_search(start, goal, g3, g3_goal, start.n + 2))
    fx["fig3.main"] = boxed_curve().diagram
    fx["fig4.expanded"] = realize(expanded_trefoil_word())
    fx["small.seed"] = trefoil_shadow()
    fx["torus.left"] = ESSENTIAL
    fx["torus.right"] = CLASP_ON_TORUS
    for name, (s, g, seq) in seqs.items():
        if seq is None:
            raise RuntimeError(f"no sequence found for {name}")
    return fx, seqs


def write(directory) -> None:
    fx, seqs = build()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    parts = ["# named pictures; gray crossings mark guards that moves must not touch\n"]
    for name, obj in fx.items():
        body = emit_tangle(obj) if name.startswith("tangle.") else emit_quad(obj)
        parts.append(f"@ {name}\n{body}")
    (directory / "fixtures.quad").write_text("\n".join(parts))
    lines = ["# one move per line, numbered against the state it applies to\n"]
    for name, (s, g, seq) in seqs.items():
        lines.append(f"@ {name}\nstart {s}\ngoal {g}")
        lines.extend(format_sequence(fx[s], seq))
        lines.append("")
    (directory / "sequences.txt").write_text("\n".join(lines))


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).with_name("data"))
    write(target)
    print(f"wrote fixtures to {target}")
