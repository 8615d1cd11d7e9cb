"""
Induced maps
============

A Poisson map f: X -> Y gives an algebra map B(X, U) -> B(Y, U) and, in the
other slot, a map B(P, V) -> B(P, U) for f: U -> V.  We check that composing
maps first and then inducing agrees with inducing and then composing.
"""
from poisson_coact.algebra import LinearMap, compose_hom
from poisson_coact.fixtures import dual_numbers, field
from poisson_coact.universal import build_universal, compose_maps, induced_map_L, induced_map_R, maps_agree

D, F = dual_numbers(), field()
neg = LinearMap(2, 2, [[1, 0], [0, -1]])  # x -> -x
proj = LinearMap(2, 1, [[1], [0]])        # x -> 0

pres_D = build_universal(D, D, 3, 2)
pres_F = build_universal(F, D, 3, 2)

# covariant in the first slot
fbar = induced_map_L(pres_D, pres_F, proj)
for s, i in pres_D.generators():
    print(f"L(proj): h[{s},{i}] -> {fbar.image(s, i)}")
both = induced_map_L(pres_D, pres_F, compose_hom(proj, neg))
print("L(proj o neg) == L(proj) o L(neg):",
      maps_agree(both, compose_maps(fbar, induced_map_L(pres_D, pres_D, neg))))

# contravariant in the second slot
pres_DF = build_universal(D, F, 3, 2)
r = induced_map_R(pres_DF, pres_D, proj)
both = induced_map_R(pres_DF, pres_D, compose_hom(proj, neg))
print("R(proj o neg) == R(neg) o R(proj):",
      maps_agree(both, compose_maps(induced_map_R(pres_D, pres_D, neg), r)))
