"""
Local fields as towers
======================

Build a few towers over Q_p and F_p((t)), do exact arithmetic with
tracked precision, and look at valuations.
"""

from fractions import Fraction

from ramify.localfield import EISENSTEIN, FieldTower, adjoin, cyclotomic, valuation

# %%
# Q_2(sqrt 2): one Eisenstein step x^2 - 2
T = FieldTower.padic(2, 24).extend([-2, 0, 1], EISENSTEIN)
th = T.gen()
print("e, f =", T.e, T.f)
print("v(th^3) =", valuation(th ** 3))
print("th^-1 == th/2 :", th.inverse() == th / 2)

# %%
# Q_3(zeta_9), generated by zeta - 1 at each level
C = cyclotomic(3, 2)
zeta = C.gen() + 1
print("zeta^9 == 1 :", zeta ** 9 == C.one())
print("absolute ramification index:", C.e)

# %%
# adjoin() decides the step type; here a cube root of 3 over Q_3(zeta_3)
F = adjoin(cyclotomic(3, 1), [-3, 0, 0, 1]).tower
print("Q_3(zeta_3, 3^(1/3)) has e =", F.e)

# %%
# precision: a difference that cancels is only known to be zero up to the cap
Q3 = FieldTower.padic(3, 8)
z = Q3(5) - Q3(5)
print("zero?", z.is_zero(), " valuation:", valuation(z))
print("v(9) =", valuation(Q3(9)), " v(1/3) =", valuation(Q3(Fraction(1, 3))))

# %%
# the equal-characteristic side: F_2((t)) and an Artin-Schreier step
L = FieldTower.laurent(2, 24)
t = L.uniformizer()
A = adjoin(L, [-t.inverse(), -1, 1])
print("Artin-Schreier x^2 - x - 1/t:", A.kind, " e =", A.tower.e)
