"""Gauss codes, quad files, planar realization and canonical codes."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .core import BLACK, GRAY, CurveDiagram, InvalidDiagram, genus, sigma, validate


class ParseError(ValueError):
    pass


class NotPlanar(Exception):
    """Raised by realize when no genus-0 embedding exists."""


def _strip_comments(text: str) -> list[str]:
    return [line.split("#", 1)[0] for line in text.splitlines()]


def parse_gauss(text: str) -> list[int]:
    tokens = " ".join(_strip_comments(text)).split()
    if not tokens:
        raise ParseError("empty Gauss code")
    try:
        word = [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer token in Gauss code: {exc}") from None
    check_gauss(word)
    return word


def check_gauss(word) -> None:
    counts: dict[int, int] = {}
    for x in word:
        if x <= 0:
            raise ParseError(f"label {x} is not positive")
        counts[x] = counts.get(x, 0) + 1
    bad = sorted(k for k, v in counts.items() if v != 2)
    if bad:
        raise ParseError(f"double-occurrence violated for labels {bad}")


def normalize_gauss(word) -> list[int]:
    labels: dict[int, int] = {}
    out = []
    for x in word:
        labels.setdefault(x, len(labels) + 1)
        out.append(labels[x])
    return out


def emit_gauss(word) -> str:
    return " ".join(str(x) for x in word) + "\n"


def gauss_even(word) -> bool:
    """Gauss's parity condition: an even number of letters between the two
    occurrences of every label."""
    first: dict[int, int] = {}
    for i, x in enumerate(word):
        if x in first:
            if (i - first[x] - 1) % 2:
                return False
        else:
            first[x] = i
    return True


def _alpha_from_choices(word, choices) -> list[int]:
    # first passage through crossing c enters at position 0 and leaves at 2;
    # the second enters at 1 (leaves 3) or at 3 (leaves 1) as chosen
    index = {}
    for x in word:
        index.setdefault(x, len(index))
    seen = set()
    enter, leave = [], []
    for x in word:
        c = index[x]
        if c in seen:
            e = 1 if choices[c] == 0 else 3
        else:
            seen.add(c)
            e = 0
        enter.append(4 * c + e)
        leave.append(4 * c + (e ^ 2))
    alpha = [0] * (4 * len(index))
    m = len(word)
    for i in range(m):
        a, b = leave[i], enter[(i + 1) % m]
        alpha[a] = b
        alpha[b] = a
    return alpha


def realize(word) -> CurveDiagram:
    """Planar (genus 0) diagram with the given Gauss word.

    Tries every rotation assignment of the second passages, in a fixed order,
    and returns the first embedding of genus 0.  Raises NotPlanar otherwise.
    """
    check_gauss(word)
    word = normalize_gauss(word)
    n = len(word) // 2
    if not gauss_even(word):
        raise NotPlanar(word)
    for bits in _choice_order(n):
        d = CurveDiagram(tuple(_alpha_from_choices(word, bits)))
        if validate(d) is None and genus(d) == 0:
            return d
    raise NotPlanar(word)


def _choice_order(n):
    # the first crossing's choice only mirrors the picture; later crossings
    # try the "same side" passage first, which closes kinks into fingers
    for head in (0, 1):
        for rest in itertools.product((1, 0), repeat=max(n - 1, 0)):
            yield (head,) + rest


def all_realizations(word) -> list[CurveDiagram]:
    """Every genus-0 rotation assignment; used as a brute-force oracle."""
    check_gauss(word)
    word = normalize_gauss(word)
    n = len(word) // 2
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        d = CurveDiagram(tuple(_alpha_from_choices(word, bits)))
        if validate(d) is None and genus(d) == 0:
            out.append(d)
    return out


# quad files

_QUAD_LINE = re.compile(r"^X\s+(-?\d+)\s*:\s*(.*)$")


def parse_quad(text: str) -> CurveDiagram:
    """Parse ``X <id>: e0 e1 e2 e3 [gray]`` lines.  ``O <genus>`` is the
    crossing-free curve."""
    crossings = []
    bare = None
    for raw in _strip_comments(text):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("O"):
            parts = line.split()
            bare = int(parts[1]) if len(parts) > 1 else 0
            continue
        m = _QUAD_LINE.match(line)
        if not m:
            raise ParseError(f"bad quad line: {line!r}")
        ends = m.group(2).split()
        color = BLACK
        if len(ends) == 5 and ends[-1] in (BLACK, GRAY, "g", "b"):
            color = GRAY if ends[-1] in (GRAY, "g") else BLACK
            ends = ends[:-1]
        if len(ends) != 4:
            raise ParseError(f"crossing {m.group(1)} has {len(ends)} edge ends, expected 4")
        crossings.append((int(m.group(1)), ends, color))
    if bare is not None:
        if crossings:
            raise ParseError("bare curve line mixed with crossings")
        return CurveDiagram(bare_genus=bare)
    if not crossings:
        raise ParseError("empty quad file")
    crossings.sort(key=lambda t: t[0])
    if len({c[0] for c in crossings}) != len(crossings):
        raise ParseError("duplicate crossing id")
    where: dict[str, list[int]] = {}
    for i, (_, ends, _) in enumerate(crossings):
        for p, label in enumerate(ends):
            where.setdefault(label, []).append(4 * i + p)
    alpha = [0] * (4 * len(crossings))
    for label, darts in where.items():
        if len(darts) != 2:
            raise ParseError(f"edge-end label {label!r} appears {len(darts)} times (dangling edge)")
        a, b = darts
        alpha[a], alpha[b] = b, a
    d = CurveDiagram(tuple(alpha), tuple(c for _, _, c in crossings))
    err = validate(d)
    if err:
        if "component" in err:
            raise ParseError("multiple curve components")
        raise ParseError(err)
    return d


def emit_quad(diagram: CurveDiagram) -> str:
    if diagram.is_bare:
        return f"O {diagram.bare_genus}\n"
    label: dict[int, int] = {}
    lines = []
    for c in range(diagram.n):
        ends = []
        for p in range(4):
            d = 4 * c + p
            key = min(d, diagram.alpha[d])
            if key not in label:
                label[key] = len(label) + 1
            ends.append(str(label[key]))
        suffix = " gray" if diagram.colors[c] == GRAY else ""
        lines.append(f"X {c}: {' '.join(ends)}{suffix}")
    return "\n".join(lines) + "\n"


def parse_fixture_bundle(text: str) -> dict[str, CurveDiagram]:
    """Named quad blocks introduced by ``@ name`` lines."""
    blocks: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        if raw.startswith("@"):
            current = raw[1:].strip()
            blocks[current] = []
        elif current is not None:
            blocks[current].append(raw)
    return {name: parse_quad("\n".join(lines)) for name, lines in blocks.items()}


def emit_fixture_bundle(named: dict[str, CurveDiagram], header: str = "") -> str:
    parts = [header] if header else []
    for name, d in named.items():
        parts.append(f"@ {name}\n{emit_quad(d)}")
    return "\n".join(parts)


def load_diagram(text: str) -> CurveDiagram:
    """Quad text if it has quad lines, otherwise a Gauss code realized on the sphere."""
    body = [l.strip() for l in _strip_comments(text) if l.strip()]
    if body and (body[0].startswith("X") or body[0].startswith("O")):
        return parse_quad(text)
    return realize(parse_gauss(text))


# canonical codes

def mirror(diagram: CurveDiagram) -> CurveDiagram:
    """Same curve on the oppositely oriented surface."""
    if diagram.is_bare:
        return diagram
    m = [(d & ~3) | ((-d) & 3) for d in range(len(diagram.alpha))]
    alpha = [0] * len(m)
    for d, a in enumerate(diagram.alpha):
        alpha[m[d]] = m[a]
    return CurveDiagram(tuple(alpha), diagram.colors, diagram.bare_genus)


def _code_from(alpha, start, best):
    """Breadth-first relabelling code from ``start``; returns None as soon as
    the code is known to exceed ``best``."""
    entry = [start]
    index = {start >> 2: 0}
    out = []
    pos = 0
    i = 0
    while i < len(entry):
        e = entry[i]
        base = e & ~3
        for k in range(4):
            partner = alpha[base | ((e + k) & 3)]
            c = partner >> 2
            j = index.get(c)
            if j is None:
                j = len(entry)
                index[c] = j
                entry.append(partner)
            tok = 4 * j + ((partner - entry[j]) & 3)
            if best is not None and pos < len(best):
                b = best[pos]
                if tok > b:
                    return None, None
                if tok < b:
                    best = None
            out.append(tok)
            pos += 1
        i += 1
    return out, entry


def _start_candidates(diagram: CurveDiagram) -> list[int]:
    flist, owner = diagram.face_index()
    sizes = [f.sides for f in flist]
    inv = [(sizes[owner[d]], sizes[owner[(d & ~3) | ((d + 1) & 3)]],
            sizes[owner[(d & ~3) | ((d + 2) & 3)]]) for d in range(len(diagram.alpha))]
    lo = min(inv)
    return [d for d in range(len(inv)) if inv[d] == lo]


def canonical_labeling(diagram: CurveDiagram):
    """(code, order) where ``order`` lists the entry dart of each crossing in
    canonical discovery order."""
    alpha = diagram.alpha
    best, best_entry = None, None
    for s in _start_candidates(diagram):
        code, entry = _code_from(alpha, s, best)
        if code is not None and (best is None or code < best):
            best, best_entry = code, entry
    return best, best_entry


@dataclass(frozen=True)
class CanonicalCode:
    key: bytes
    mirror_class: bool = False


def canonical_key(diagram: CurveDiagram, include_mirror: bool = False, colors: bool = False) -> bytes:
    if diagram.is_bare:
        return b"O" + bytes([diagram.bare_genus])
    code, entry = canonical_labeling(diagram)
    key = _pack(code)
    if colors:
        key += b"|" + bytes(1 if diagram.colors[e >> 2] == GRAY else 0 for e in entry)
    if include_mirror:
        other = canonical_key(mirror(diagram), False, colors)
        key = min(key, other)
    return key


def _pack(code) -> bytes:
    if len(code) < 256:
        return bytes(code)
    return b"W" + b"".join(t.to_bytes(2, "big") for t in code)


def canonical(diagram: CurveDiagram, include_mirror: bool = False) -> CanonicalCode:
    return CanonicalCode(canonical_key(diagram, include_mirror), include_mirror)


def canonical_darts(diagram: CurveDiagram) -> list[int]:
    """Dart ids listed in canonical order, so ``canonical_darts(d)[k]`` is the
    dart that the canonical labelling calls ``k``."""
    if diagram.is_bare:
        return []
    _, entry = canonical_labeling(diagram)
    out = []
    for e in entry:
        out.extend((e & ~3) | ((e + k) & 3) for k in range(4))
    return out


def isomorphism(a: CurveDiagram, b: CurveDiagram) -> dict[int, int] | None:
    """An orientation-preserving dart map from ``a`` onto ``b``, or None."""
    if a.n != b.n or canonical_key(a) != canonical_key(b):
        return None
    return dict(zip(canonical_darts(a), canonical_darts(b)))


def all_isomorphisms(a: CurveDiagram, b: CurveDiagram):
    """Every orientation-preserving dart map from ``a`` onto ``b``."""
    if a.n != b.n or a.is_bare:
        return []
    out = []
    m = len(a.alpha)
    for target in range(m):
        f = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for x, y in ((a.alpha[d], b.alpha[f[d]]), (sigma(d), sigma(f[d]))):
                if x in f:
                    ok = f[x] == y
                    if not ok:
                        break
                else:
                    f[x] = y
                    stack.append(x)
        if ok and len(set(f.values())) == m:
            out.append(f)
    return out


def is_isomorphic(a: CurveDiagram, b: CurveDiagram, include_mirror: bool = False) -> bool:
    return canonical_key(a, include_mirror) == canonical_key(b, include_mirror)


def renumber(diagram: CurveDiagram, crossing_perm, shifts=None) -> CurveDiagram:
    """Same map with crossing ``c`` renamed ``crossing_perm[c]`` and its
    positions rotated by ``shifts[c]``."""
    n = diagram.n
    shifts = shifts or [0] * n

    def f(d):
        c = d >> 2
        return 4 * crossing_perm[c] + (((d & 3) + shifts[c]) & 3)

    alpha = [0] * (4 * n)
    for d, a in enumerate(diagram.alpha):
        alpha[f(d)] = f(a)
    colors = [None] * n
    for c in range(n):
        colors[crossing_perm[c]] = diagram.colors[c]
    return CurveDiagram(tuple(alpha), tuple(colors), diagram.bare_genus)
