"""
Differents, dual bases and Kähler differentials
===============================================

Two independent routes to v(delta) for each step, the trace-dual
basis, Omega as a presented module and the diagonal idempotent.
"""

from fractions import Fraction

from ramify import differential as dif
from ramify.localfield import EISENSTEIN, UNRAMIFIED, FieldTower, cyclotomic, p_radical

# %%
# per-step differents, derivative route cross-checked against the trace dual
for name, T in [("Q3(zeta3)", cyclotomic(3, 1)),
                ("Q3(zeta9)", cyclotomic(3, 2)),
                ("Q2(2^(1/4))", p_radical(2, 2))]:
    rep = dif.different_tower(T, cross_check=True)
    steps = [str(e.v_delta) for e in rep.entries]
    print(f"{name:12} steps={steps} total={rep.total} absolute check: {rep.absolute_check}")

# %%
# trace form and dual basis of Q3(sqrt 2) (unramified)
U = FieldTower.padic(3).extend([-2, 0, 1], UNRAMIFIED)
td = dif.trace_data(U)
print("gram:", [[str(g) for g in row] for row in td.gram])
th = U.gen()
# residues are stored balanced mod p^N, so compare rather than print
print("dual basis is 1/2, th/4:", td.dual[0] == U(Fraction(1, 2)), td.dual[1] == th / 4)
print("orthogonal:", td.orthogonal)

# %%
# Omega_{O_L/O_K} = O_L / (f'(theta)); zero exactly when the step is unramified
for name, T in [("unramified", U), ("Q3(zeta3)", cyclotomic(3, 1))]:
    om = dif.omega(T)
    print(f"{name:10} Omega zero: {om.zero}  v(delta) = {om.v_delta}")

# %%
# J/J^2 in O_L (x) O_L agrees with Omega
Q2s = FieldTower.padic(2).extend([-2, 0, 1], EISENSTEIN)
_, rep = dif.tensor_square(Q2s)
print("J/J^2 invariants:", *rep.jj2_invariants, " Omega invariants:", *rep.omega_invariants)

# %%
# the diagonal idempotent: exact when etale, otherwise only after scaling by epsilon
print("etale idempotent exact:", dif.idempotent(U).exact_idempotent)
r = dif.idempotent(Q2s, eps=2)
print("Q2(sqrt2): smallest v(eps) making eps*e integral =", r.threshold)
for c in r.scan:
    print("  v(eps) =", c.valuation, " integral:", c.integral)
