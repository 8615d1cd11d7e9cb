"""
Dual numbers coacting on themselves
===================================

P = U = F[x]/(x^2) with zero bracket.  B(P) is generated by a 2 x 2 matrix
of letters h[s,i]; the unit relations pin down the first column, and what is
left is a small commutative bialgebra.  We print the truncated dimension
series and run the bialgebra and comodule checks.
"""
from pathlib import Path

from poisson_coact.serialize import load_algebra
from poisson_coact.universal import (
    build_universal,
    comultiplication,
    psi_apply,
    verify_bialgebra,
    verify_comodule,
)

D = load_algebra(Path(__file__).parent / "data" / "dual_numbers.json")
pres = build_universal(D, D, degree=3, margin=2)

print("relations:", len(pres.relations))
print("quotient dims:", pres.quotient_dims(), " margin stable:", pres.margin_stable())

# letters print as h<k> with k = s * dim P + i, so h3 is h[1,1]
# psi(x) = 1 (x) h[0,1] + x (x) h[1,1]
print("psi(x) =", psi_apply(pres, [0, 1]).values)

# the matrix comultiplication on h[1,1]: h[1,0] (x) h[0,1] + h[1,1] (x) h[1,1],
# where the first term dies because the unit relation forces h[1,0] = 0
delta = comultiplication(pres)
image = delta.images[pres.letter(1, 1)]
print("delta(h[1,1]) =", image, " reduces to", delta.reduce(image))

rep = verify_bialgebra(pres)
print(f"bialgebra: {len(rep.checks)} checks, passed = {rep.passed}")
rep = verify_comodule(pres)
print(f"comodule:  {len(rep.checks)} checks, passed = {rep.passed}")
