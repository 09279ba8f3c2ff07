"""Command-line front end.

Exit codes: 0 success or verified, 1 refuted or exhausted, 2 bad input,
3 a resource cap was hit.  Any file argument may also be a fixture name.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .codec import NotPlanar, ParseError, canonical_key, emit_quad, isomorphism, load_diagram
from .core import CurveDiagram, InvalidDiagram, gauss_word, genus, side_histogram
from .moves import ONE_THREE, StaleMove, apply, enumerate_moves, format_move, is_applicable, parse_kinds, parse_move

OK, REFUTED, BAD_INPUT, CAPPED = 0, 1, 2, 3

log = logging.getLogger("planaria")


class InputError(Exception):
    pass


def _fixtures():
    from .fixtures import load_fixtures

    try:
        return load_fixtures()
    except (OSError, ParseError, InvalidDiagram) as exc:
        raise InputError(f"cannot load fixtures: {exc}") from exc


def load_curve(arg: str) -> CurveDiagram:
    p = Path(arg)
    if p.is_file():
        try:
            return load_diagram(p.read_text())
        except (ParseError, InvalidDiagram, NotPlanar, ValueError) as exc:
            raise InputError(f"{arg}: {exc}") from exc
    fx = _fixtures()
    if arg in fx:
        obj = fx[arg]
        if not isinstance(obj, CurveDiagram):
            raise InputError(f"{arg} is a tangle, not a closed curve")
        return obj
    raise InputError(f"{arg}: no such file or fixture")


def load_moves(start: CurveDiagram, arg: str):
    """Move lines from a file, or a named sequence with its own start."""
    from .fixtures import load_sequences, parse_sequence

    p = Path(arg)
    if p.is_file():
        lines = [l.split("#", 1)[0].strip() for l in p.read_text().splitlines()]
        lines = [l for l in lines if l]
    else:
        seqs = load_sequences()
        if arg not in seqs:
            raise InputError(f"{arg}: no such sequence file or named sequence")
        lines = seqs[arg][2]
    try:
        return parse_sequence(start, lines)
    except StaleMove:
        raise
    except (ValueError, IndexError) as exc:
        raise InputError(f"{arg}: {exc}") from exc


def _write(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(args, data: dict, line: str):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(line)


# subcommands

def cmd_info(args):
    d = load_curve(args.file)
    hist = side_histogram(d)
    _emit(args, {"n": d.n, "genus": genus(d), "faces": hist, "gauss": gauss_word(d) if d.n else []},
          f"n={d.n} genus={genus(d)} faces={hist}".replace(", ", ","))
    if not args.json:
        word = gauss_word(d) if d.n else []
        print("gauss=" + " ".join(map(str, word)))
    return OK


def cmd_moves(args):
    d = load_curve(args.file)
    kinds = _kinds(args.kinds)
    for m in enumerate_moves(d, kinds):
        print(format_move(d, m))
    return OK


def _kinds(text):
    try:
        return parse_kinds(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_apply(args):
    d = load_curve(args.file)
    try:
        m = parse_move(d, args.move)
    except StaleMove as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return REFUTED
    except (ValueError, IndexError) as exc:
        raise InputError(f"bad move {args.move!r}: {exc}") from exc
    if not is_applicable(d, m):
        print(f"inapplicable: {args.move}", file=sys.stderr)
        return REFUTED
    _write(emit_quad(apply(d, m)), args.output)
    return OK


def cmd_search(args):
    from .fixtures import format_sequence
    from .search import CAP_HIT, SIMPLIFIED, SearchConfig, SearchError, explore

    d = load_curve(args.file)
    config = SearchConfig(kinds=_kinds(args.kinds), max_crossings=args.max_crossings,
                          max_states=args.max_states, strategy=args.strategy)
    try:
        res = explore(d, config)
    except SearchError as exc:
        raise InputError(str(exc)) from exc
    if res.simplified and args.emit_sequence:
        Path(args.emit_sequence).write_text("".join(l + "\n" for l in format_sequence(d, res.sequence)))
    data = {"status": res.status, "n_min": res.min_crossings, "states": res.visited,
            "edges": res.edges, "violations": {}, "length": len(res.sequence), "cap": args.max_crossings}
    _emit(args, data, f"{res.status} min={res.min_crossings} states={res.visited} edges={res.edges} "
                      f"length={len(res.sequence)} max_crossings={args.max_crossings}")
    if res.status == SIMPLIFIED:
        return OK
    return CAPPED if res.status == CAP_HIT else REFUTED


def cmd_replay(args):
    from .fixtures import load_sequences
    from .search import inverse_sequence, replay

    d = load_curve(args.file)
    if not Path(args.sequence).is_file() and args.sequence in load_sequences():
        start_name = load_sequences()[args.sequence][0]
        if canonical_key(d) != canonical_key(load_curve(start_name)):
            raise InputError(f"sequence {args.sequence} starts at {start_name}, not {args.file}")
        d = load_curve(start_name)
    try:
        seq = load_moves(d, args.sequence)
    except StaleMove as exc:
        print(f"stale: {exc}", file=sys.stderr)
        return REFUTED
    end = replay(d, seq)
    if args.inverse:
        try:
            back = inverse_sequence(d, seq)
            cur = replay(end, back)
        except StaleMove as exc:
            print(f"inverse replay failed: {exc}", file=sys.stderr)
            return REFUTED
        if canonical_key(cur) != canonical_key(d):
            print("inverse replay does not return to the start", file=sys.stderr)
            return REFUTED
    kinds = sorted({m.kind for m in seq})
    print(f"replayed {len(seq)} moves kinds={','.join(kinds)} end n={end.n} genus={genus(end)}")
    if args.goal:
        goal = load_curve(args.goal)
        if canonical_key(goal) != canonical_key(end):
            print("end state differs from goal", file=sys.stderr)
            return REFUTED
    if args.output:
        Path(args.output).write_text(emit_quad(end))
    return OK


def _boxed_start():
    from .figures import boxed_curve

    curve = boxed_curve()
    fx = _fixtures()
    if "fig3.main" in fx and isomorphism(curve.diagram, fx["fig3.main"]) is None:
        raise InputError("fixture fig3.main does not match the boxed construction")
    return curve


def cmd_verify_main(args):
    from .obstruction import CertificateError, check_certificate, emit_certificate, parse_certificate, verify_boxed

    curve = _boxed_start()
    cert = curve.certificate
    if args.certificate:
        try:
            cert = parse_certificate(curve.diagram, Path(args.certificate).read_text())
        except (OSError, CertificateError, ValueError) as exc:
            raise InputError(f"{args.certificate}: {exc}") from exc
        v = check_certificate(curve.diagram, cert)
        if not v:
            print(f"certificate rejected: {v}", file=sys.stderr)
            return REFUTED
    if args.emit_certificate:
        Path(args.emit_certificate).write_text(emit_certificate(curve.diagram, cert))
    if args.cap < curve.diagram.n:
        raise InputError(f"cap {args.cap} is below the {curve.diagram.n} crossings of the start")
    rep = verify_boxed(curve.diagram, cert, curve.gauss, args.cap, mechanism=args.mechanism,
                       max_states=args.max_states, sabotage=args.sabotage)
    data = rep.as_dict()
    data["cap"] = args.cap
    data["mechanism"] = args.mechanism
    viol = data["violations"]
    verified = rep.ok and rep.n_min == curve.diagram.n
    verdict = "verified" if verified else ("capped" if rep.status == "cap_hit" else "refuted")
    _emit(args, data, f"{verdict} status={rep.status} min={rep.n_min} states={rep.states} edges={rep.edges} "
                      f"transport={viol['transport']} gauss={viol['gauss']} certificate={viol['certificate']} "
                      f"max_crossings={args.cap}")
    if not args.json:
        for bucket in (rep.transport_failures, rep.gauss_violations, rep.certificate_violations):
            for msg in bucket:
                if msg is not None:
                    print(f"  {msg}")
    if verified:
        return OK
    return CAPPED if rep.status == "cap_hit" else REFUTED


def cmd_verify_torus(args):
    from .search import SearchError
    from .torus import DiskMarkingError, verify_torus

    start = load_curve(args.start)
    target = load_curve(args.target) if args.target else None
    try:
        rep = verify_torus(args.cap, start=start, max_states=args.max_states, target=target)
    except (SearchError, DiskMarkingError) as exc:
        raise InputError(str(exc)) from exc
    data = rep.as_dict()
    data["cap"] = args.cap
    data["reached_target"] = rep.reached
    inv = sorted(rep.invariant_values)
    ok = rep.ok and not rep.reached
    _emit(args, data, f"{'verified' if ok else 'refuted'} status={rep.status} min={rep.n_min} states={rep.states} "
                      f"edges={rep.edges} invariant={inv} embedded={rep.embedded} reached_target={rep.reached} "
                      f"max_crossings={args.cap}")
    if ok:
        return OK
    return CAPPED if rep.status == "cap_hit" else REFUTED


def _crossings(text, d):
    if text == "all":
        return "all"
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"bad crossing list {text!r}") from exc


def cmd_expand(args):
    from .transforms import expand_double_bigon

    d = load_curve(args.file)
    try:
        out = expand_double_bigon(d, _crossings(args.crossings, d))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _write(emit_quad(out), args.output)
    return OK


def cmd_transport_seq(args):
    from .fixtures import format_sequence
    from .search import SearchConfig, explore, replay
    from .transforms import TransportError, expand_double_bigon, transport_sequence

    d = load_curve(args.file)
    targets = _crossings(args.crossings, d)
    targets = list(range(d.n)) if targets == "all" else targets
    if args.sequence:
        try:
            seq = load_moves(d, args.sequence)
        except StaleMove as exc:
            raise InputError(f"{args.sequence}: {exc}") from exc
    else:
        res = explore(d, SearchConfig(kinds=ONE_THREE, max_crossings=args.max_crossings))
        if not res.simplified:
            print(f"no {{1a,1b,3}} simplification of {args.file} within {args.max_crossings} crossings",
                  file=sys.stderr)
            return CAPPED if res.status == "cap_hit" else REFUTED
        seq = res.sequence
    try:
        expanded = expand_double_bigon(d, targets)
        out = transport_sequence(seq, d, targets, headroom=args.headroom)
    except (TransportError, ValueError) as exc:
        print(f"transport failed: {exc}", file=sys.stderr)
        return REFUTED
    end = replay(expanded, out)
    lines = format_sequence(expanded, out)
    _write("".join(l + "\n" for l in lines), args.output)
    circle = end.is_bare and end.bare_genus == 0
    print(f"transported {len(seq)} moves to {len(out)} moves on {expanded.n} crossings; "
          f"replay ends at {'the circle' if circle else f'n={end.n}'}", file=sys.stderr)
    return OK if circle else REFUTED


def cmd_render(args):
    from .render import RenderError, to_dot, to_svg

    d = load_curve(args.file)
    fmt = args.format or Path(args.output).suffix.lstrip(".").lower()
    try:
        if fmt == "svg":
            text = to_svg(d, args.outer_face)
        elif fmt == "dot":
            text = to_dot(d, args.outer_face)
        else:
            raise InputError(f"unknown output format {fmt!r}; use .svg or .dot")
    except RenderError as exc:
        raise InputError(str(exc)) from exc
    Path(args.output).write_text(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planaria", description="Reidemeister moves on closed curves.")
    p.add_argument("--json", action="store_true", help="machine-readable verdicts")
    p.add_argument("--threads", type=int, default=1, help="worker threads for exploration")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub_add = sub.add_parser

    def add(name, **kw):
        return sub_add(name, parents=[common], **kw)

    s = add("info", help="crossings, genus, face sizes and Gauss word")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = add("moves", help="list applicable moves")
    s.add_argument("file")
    s.add_argument("--kinds", default="all")
    s.set_defaults(func=cmd_moves)

    s = add("apply", help="apply one move")
    s.add_argument("file")
    s.add_argument("--move", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_apply)

    s = add("search", help="look for a simplifying sequence")
    s.add_argument("file")
    s.add_argument("--kinds", default="all")
    s.add_argument("--max-crossings", type=int, required=True)
    s.add_argument("--max-states", type=int, default=1_000_000)
    s.add_argument("--strategy", choices=("bfs", "priority"), default="priority",
                   help="priority expands states with fewest crossings first")
    s.add_argument("--emit-sequence")
    s.set_defaults(func=cmd_search)

    s = add("replay", help="replay a sequence file or named sequence")
    s.add_argument("file")
    s.add_argument("sequence")
    s.add_argument("--goal", help="expected end state")
    s.add_argument("--inverse", action="store_true", help="also undo the moves one by one")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_replay)

    s = add("verify-main", help="bounded check that the boxed 16-crossing curve stays stuck")
    s.add_argument("--cap", type=int, required=True)
    s.add_argument("--mechanism", choices=("cert", "gauss", "both"), default="both")
    s.add_argument("--max-states", type=int, default=1_000_000)
    s.add_argument("--sabotage", action="store_true", help="deliberately break certificate transport")
    s.add_argument("--certificate", help="certificate file to start from")
    s.add_argument("--emit-certificate", help="write the starting certificate here")
    s.set_defaults(func=cmd_verify_main)

    s = add("verify-torus", help="bounded check of the disk invariant on the torus")
    s.add_argument("--cap", type=int, required=True)
    s.add_argument("--start", default="torus.right")
    s.add_argument("--target", help="report whether this class is reached")
    s.add_argument("--max-states", type=int, default=1_000_000)
    s.set_defaults(func=cmd_verify_torus)

    s = add("expand", help="replace crossings with double bigons")
    s.add_argument("file")
    s.add_argument("--crossings", default="all")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_expand)

    s = add("transport-seq", help="carry a {1a,1b,3} sequence to the expanded curve")
    s.add_argument("file")
    s.add_argument("--sequence", help="sequence on the unexpanded curve; searched for if omitted")
    s.add_argument("--crossings", default="all")
    s.add_argument("--max-crossings", type=int, default=8)
    s.add_argument("--headroom", type=int, default=2)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_transport_seq)

    s = add("render", help="draw the curve as SVG or DOT")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--format", choices=("svg", "dot"))
    s.add_argument("--outer-face", type=int)
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return BAD_INPUT
    if args.threads > 1:
        log.info("exploration runs on one thread; --threads %d accepted", args.threads)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
