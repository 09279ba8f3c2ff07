"""Replace every double point of the trefoil shadow by a double bigon and
carry its simplifying sequence over to the bigger curve."""

from planaria.codec import emit_quad, realize
from planaria.core import side_histogram
from planaria.fixtures import format_sequence
from planaria.moves import ONE_THREE
from planaria.search import SearchConfig, explore, replay
from planaria.transforms import expand_double_bigon, transport_sequence

seed = realize([1, 2, 3, 1, 2, 3])
res = explore(seed, SearchConfig(kinds=ONE_THREE, max_crossings=5))
print("seed sequence:", " ".join(format_sequence(seed, res.sequence)))

big = expand_double_bigon(seed)
print(f"expanded: {big.n} crossings, faces {side_histogram(big)}")
print(emit_quad(big))

moves = transport_sequence(res.sequence, seed, range(seed.n))
end = replay(big, moves)
kinds = sorted({m.kind for m in moves})
print(f"{len(res.sequence)} moves became {len(moves)} ({','.join(kinds)}); ends bare: {end.is_bare}")
