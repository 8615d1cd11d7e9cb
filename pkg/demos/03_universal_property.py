"""
Coactions and algebra maps
==========================

A Poisson map P -> U (x) Q is the same thing as an algebra map B(P, U) -> Q.
Here P is the square-zero algebra on x, y with zero bracket, U is the same
space with [x, y] = x, and Q = F, so a coaction is just a Poisson map P -> U.
Such a map x -> a x + b y, y -> c x + d y respects the bracket only when
ad - bc = 0.  We pass a few matrices through the solver.
"""
from poisson_coact.errors import ConstraintViolation
from poisson_coact.fixtures import field, square_zero_abelian, square_zero_lie
from poisson_coact.universal import CoactionMatrix, build_universal, solve_coaction, theta

F = field()
pres = build_universal(square_zero_abelian(), square_zero_lie(), degree=3, margin=2)
print("B(P, U) dims:", pres.quotient_dims())

candidates = {
    "rank one": [[1, 0, 0], [0, 1, 1], [0, -1, -1]],
    "zero": [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
    "identity": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "x -> 1 + x": [[1, 1, 0], [0, 1, 0], [0, 0, 0]],
}
for name, rows in candidates.items():
    dmat = CoactionMatrix.from_scalars(rows)
    try:
        g, _ = solve_coaction(pres, F, dmat)
    except ConstraintViolation as err:
        print(f"{name:>12}: rejected, {err.family} relation at {err.witness}")
        continue
    print(f"{name:>12}: accepted, round trip {theta(pres, F, g) == dmat}")
