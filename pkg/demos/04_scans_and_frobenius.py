"""
Scanning towers for deep ramification
=====================================

For a family F_n and a fixed extension K', compute v(delta(F_n K'/F_n))
level by level and read off a verdict.  Then search for p-th roots
modulo p at higher levels.
"""

from ramify import ramanalyzer as ra
from ramify.localfield import cyclotomic

# %%
for family, p in [("cyclotomic", 3), ("p_radical", 3), ("constant", 3), ("unramified", 2)]:
    s = ra.scan(ra.TowerFamily(family, p))
    seq = ", ".join(str(v) for v in s.sequence)
    print(f"{family:10} p={p}  K'={s.kprime:10}  [{seq}]  -> {s.verdict} ({s.basis})")

# %%
# the threshold is configuration, not a constant of nature
s = ra.scan(ra.TowerFamily("cyclotomic", 3), threshold=ra.Fraction(1, 10))
print("with threshold 1/10:", s.verdict)

# %%
# absolute differents of the cyclotomic levels: n - 1/(p-1)
fam = ra.TowerFamily("cyclotomic", 3)
for n in range(1, 4):
    a = ra.absolute_different(fam, n)
    print(f"n={n}: v(delta(F_n/Q_3)) = {a.value}  (methods agree: {a.agree})")

# %%
# zeta_3 - 1 has a p-th root modulo 3 one level up, namely zeta_9 - 1
w = ra.frobenius_witness(fam, 1, fam.level(1).gen(), m_max=2)
print(w.status, "at level", w.level, " witness is the generator:", w.witness == fam.level(2).gen())

# %%
# in the constant tower nothing new appears
const = ra.TowerFamily.constant(cyclotomic(3, 1))
w = ra.frobenius_witness(const, 0, const.level(0).gen(), m_max=4)
print(w.status, " candidates tried:", w.tried)
