"""
Generators and relations of a weighted Rips bifiltration
=========================================================

Four weighted points in the plane, graded by weight level and by scale
level, give a filtration over a 3 x 4 grid. We compute a presentation of the
reduced degree-0 and degree-1 homology and check it gradewise.
"""

from cayleypers import compute_presentation, persistent_betti, rips_bifiltration
from cayleypers.complex import WeightedPointCloud
from cayleypers.shapes import SCALE_LEVELS, WEIGHT_LEVELS, WEIGHTED_POINTS, WEIGHTS

cloud = WeightedPointCloud(WEIGHTED_POINTS, WEIGHTS)
fc = rips_bifiltration(cloud, WEIGHT_LEVELS, SCALE_LEVELS)
print(fc)

# simplices enter at (weight index, scale index)
for s in fc.simplices:
    print(s, "@", fc.grades[s])

# %%
# Degree 0 has three generators (the two weight-1 points differ by one class,
# and the later points add two more), degree 1 has a single loop.

for p in (0, 1):
    pres = compute_presentation(fc, p, field=3)
    print(f"\ndegree {p}")
    for g in pres.generators:
        print(f"  generator #{g.id} born at {g.grade}")
    for r in pres.relations:
        terms = " + ".join(f"{c}*L{list(sh)} g{gid}" for gid, c, sh in r.terms(pres))
        print(f"  relation at {r.grade}: {terms}")
    assert all(x == y for x, y in pres.dimension_check().values())

# %%
# Persistent Betti numbers follow from the structure maps. The class born at
# (0, 0) still lives at (0, 2) but has been merged and killed by (2, 2).

print(persistent_betti(fc, (0, 0), (0, 2), 0), persistent_betti(fc, (0, 0), (2, 2), 0))
