"""The eight-box curve: stuck under moves 1 and 3, undone once 2 is allowed."""

from planaria.figures import boxed_curve
from planaria.fixtures import format_sequence
from planaria.moves import ALL_KINDS, ONE_THREE
from planaria.obstruction import emit_certificate, verify_boxed
from planaria.search import SearchConfig, explore, replay

curve = boxed_curve()
d = curve.diagram
print(f"start: {d.n} crossings")
print(emit_certificate(d, curve.certificate))

# every class reachable with 1a, 1b, 3 while staying at 17 crossings or fewer
rep = verify_boxed(d, curve.certificate, curve.gauss, 17)
print("moves 1a,1b,3 up to 17 crossings:", rep.as_dict())

res = explore(d, SearchConfig(kinds=ONE_THREE, max_crossings=18, stop_at_simplified=False))
print(f"up to 18 crossings: {res.visited} classes, fewest crossings {res.min_crossings}")

res = explore(d, SearchConfig(kinds=ALL_KINDS, max_crossings=18, strategy="priority"))
print(f"with every move: {res.status} in {len(res.sequence)} moves")
print(" ".join(format_sequence(d, res.sequence)))
assert replay(d, res.sequence).is_bare
print("kinds used:", sorted({m.kind for m in res.sequence}))
