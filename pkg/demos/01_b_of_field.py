"""
The universal algebra of the ground field
=========================================

With P = U = F there is a single generator h and two relations: the unit
relation h - 1 and the product relation h - h*h.  The quotient collapses to
F itself, and the matrix comultiplication becomes h -> h (x) h.
"""
from pathlib import Path

from poisson_coact.serialize import load_algebra
from poisson_coact.universal import build_universal, comultiplication, counit, verify_bialgebra

data = Path(__file__).parent / "data"
F = load_algebra(data / "field.json")

# build up to degree 4, saturating two degrees beyond that
pres = build_universal(F, F, degree=4, margin=2)
for r in pres.relations:
    print(f"{r.label:>18}   {r.element!r}")

print("quotient dims by degree:", pres.quotient_dims())
print("margin stable:", pres.margin_stable())

# every power of h reduces to 1
h = pres.gen(0, 0)
print("nf(h^3) =", pres.nf(h * h * h))

delta, eps = comultiplication(pres), counit(pres)
print("delta(h) =", delta.images[0])
print("eps(h)   =", eps.scalar_images()[(0, 0)])
print("bialgebra checks pass:", verify_bialgebra(pres).passed)
