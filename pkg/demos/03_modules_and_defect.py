"""
Modules over valuation rings and the defect
===========================================

Smith normal form over a discrete valuation ring, Fitting ideals, and
cut modules over a non-discrete value group used to classify the
defect of an Artin-Schreier type extension.
"""

from fractions import Fraction

from ramify import modulecalc as mc
from ramify import valuegroup as vg
from ramify.localfield import FieldTower

# %%
Z3 = FieldTower.padic(3)
A = [[6, 3, 9], [3, 27, 0]]
res = mc.smith_normal_form(A, Z3)
print("invariants (valuations):", *res.invariants)
print("certificate checks:", mc.check_certificate(A, res, Z3))
M = mc.PresentedModule.diagonal(Z3, [3, 9])
print("Fitting ideals of O/3 + O/9 (valuations):", *mc.fitting_ideals(M))

# %%
# value groups: Z[1/3] is dense of rank one, Z is not
for text in ["Z", "Z[1/3]", "Z[1/3] x Z"]:
    G = vg.ValueGroup.parse(text)
    print(f"{text:12} rank={vg.rank(G)} DR condition={vg.dr_valuegroup_condition(G)}")

# %%
# cuts: the ideal of elements of value > 0 versus >= 0
G = vg.ValueGroup((3,))
m, O = vg.Cut.open(G, 0), vg.Cut.closed(G, 0)
print("m^3 == m:", vg.cut_equal(vg.cut_power(m, 3), m))
print("O/m almost zero:", mc.is_almost_zero(mc.CutModule(((O, m),))))

# %%
# defect classification from the values of the ramification ideal
indep = mc.defect_classify([Fraction(1, 3 ** k) for k in range(1, 6)], 3, infimum=0)
dep = mc.defect_classify([Fraction(4, 3), Fraction(10, 9)], 3, infimum=1, attained=False)
for name, r in [("values 1/3^k", indep), ("values 1 + 1/3^k", dep)]:
    print(f"{name:18} {r.verdict:12} Omega zero: {r.omega_zero}  gap: {r.gap}")
