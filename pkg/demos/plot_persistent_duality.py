"""
Persistent Poincare duality on maps of tori
===========================================

A stage sequence of closed surfaces carries fundamental cycles at each stage.
The coefficient lambda of the transported fundamental class decides which
half of the duality statement applies.
"""

from cayleypers import duality_report
from cayleypers.shapes import torus_collapse_sequence, torus_identity_sequence, torus_refinement_sequence

for name, seq in [("identity", torus_identity_sequence()), ("collapse onto a circle", torus_collapse_sequence()),
                  ("6x6 onto 3x3", torus_refinement_sequence())]:
    rep = duality_report(seq, 0, 1, field=3)
    print(f"{name}: lambda = {rep.lam}, case {rep.case}, holds = {rep.holds}")
    print("  persistent cohomology Betti numbers:", rep.betti_cohomology)
    if rep.case == "i":
        print("  duality map bijective per degree:", rep.bijective)
    else:
        print("  top persistent cup-space:", rep.top_cup_space)
        print("  Betti sum bounds:", rep.inequalities)
