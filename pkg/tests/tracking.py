"""Following one dart of a diagram through a move."""

from planaria.moves import R3, support


def tracked_dart(before, move, trace):
    """A dart of ``before`` away from the move and its image, or None.

    Darts at crossings outside the support keep their neighbourhood.  For
    kinds 1 and 2 any surviving dart on a face the move does not remove
    will do.  Move 3 may use every crossing; then nothing is returned.
    """
    sup = support(before, move)
    for x in range(len(before.alpha)):
        if x >> 2 not in sup and x in trace.dart_map:
            return x, trace.dart_map[x]
    if move.kind == R3:
        return None
    own = before.face_index()[1]
    gone = {own[move.anchor[0]]} if move.kind in ("1a", "2a") else set()
    for x in sorted(trace.dart_map):
        if own[x] not in gone:
            return x, trace.dart_map[x]
    return None
