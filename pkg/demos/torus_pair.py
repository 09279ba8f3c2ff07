"""Two homotopic curves on the torus that moves 1 and 3 cannot connect."""

from planaria.moves import R2A, apply, enumerate_moves
from planaria.torus import CLASP_ON_TORUS, ESSENTIAL, disk_tangle_intersections, outside_arcs, verify_torus

clasp = CLASP_ON_TORUS
arcs = outside_arcs(clasp)
print("clasp arcs outside the disk:", [sorted(a) for a in arcs])
print("strand intersections inside the disk:", disk_tangle_intersections(clasp, arcs))

# move 2a pulls the clasp apart, so the two curves are homotopic
simple = apply(clasp, enumerate_moves(clasp, [R2A])[0])
print("after 2a:", simple)

for cap in (4, 5, 6):
    rep = verify_torus(cap, target=ESSENTIAL)
    print(f"cap {cap}: {rep.states} classes, invariant {sorted(rep.invariant_values)}, "
          f"simple curve reached: {rep.reached}")
