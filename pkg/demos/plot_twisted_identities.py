"""
Shift operators and the persistence-cup product
===============================================

On a two-parameter torus filtration we draw random classes and shifts and
check that shifting commutes with products, that products are associative
and graded commutative, and that shifted factors collect into one shift.
"""

from cayleypers import CupAlgebra, twisted_identity_check
from cayleypers.shapes import torus_bifiltration

fc = torus_bifiltration()
alg = CupAlgebra(fc, field=3)
x = alg.basis((3, 3), 1)[0]
y = alg.basis((3, 3), 1)[1]
print("product grade:", alg.product(x, y).grade, "zero:", alg.product(x, y).is_zero)
print("after shifting by (1, 0):", alg.shift(alg.product(x, y), (1, 0)).coords)

for field in (2, 3, 5):
    rep = twisted_identity_check(fc, field, samples=50, seed=field)
    print(f"GF({field}): {rep.checked} samples, failures: {rep.failures or 'none'}")
