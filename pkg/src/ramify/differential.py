"""Trace forms, differents, Kähler differentials and tensor-square idempotents.

Everything is computed per step ``L = F_k`` over ``K = F_{k-1}`` of a tower,
where ``O_L = O_K[θ]`` with minimal polynomial ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionExhausted, SingularGram, ValidationError
from .localfield import AtLeast, FieldElement, FieldTower, derivative_value
from .localfield.poly import synthetic_division
from .modulecalc import PresentedModule, inverse_matrix, smith_normal_form

DERIVATIVE = "derivative"
TRACE_DUAL = "trace-dual"
ABSOLUTE_CHECK_MAX_DEGREE = 24


def _step_towers(tower: FieldTower, k: int | None):
    k = tower.depth if k is None else k
    if not 1 <= k <= tower.depth:
        raise ValidationError(f"step {k} out of range for a tower with {tower.depth} steps")
    return tower.prefix(k), tower.prefix(k - 1), k


def step_poly(L: FieldTower) -> list:
    """Defining polynomial of the top step of ``L`` as elements of the level below."""
    K = L.prefix(L.depth - 1)
    return [FieldElement(K, c, K.precision) for c in L.steps[-1].poly]


def power_sums(L: FieldTower, count: int) -> list:
    """``Tr_{L/K}(θ^i)`` for ``i < count``."""
    K = L.prefix(L.depth - 1)
    sums = L.arith.power_sums(count)
    return [FieldElement(K, s, K.precision) for s in sums]


def relative_trace(L: FieldTower, x: FieldElement, sums=None) -> FieldElement:
    """``Tr_{L/K}(x)`` from the coordinates of ``x`` on the power basis."""
    K = L.prefix(L.depth - 1)
    d = L.steps[-1].degree
    sums = sums or power_sums(L, d)
    vt = L.arith.vtheta
    acc = K.zero()
    for i, c in enumerate(x.rep):
        coeff = FieldElement(K, c, x.prec - i * vt)
        acc = acc + coeff * sums[i]
    return acc


def absolute_trace(T: FieldTower, x: FieldElement) -> FieldElement:
    """Trace down to the base field, one step at a time."""
    cur = x
    for k in range(T.depth, 0, -1):
        cur = relative_trace(T.prefix(k), cur)
    return cur


# -- trace data ---------------------------------------------------------------------


@dataclass
class TraceData:
    step: int
    basis: list
    gram: list
    dual_coeffs: list  # B = gram^{-1}; e_i* = Σ_k B[k][i] e_k
    dual: list
    disc_valuation: Fraction
    clearing_exponent: int  # least m with π_K^m · e_i* integral for all i
    clearing_valuation: Fraction
    orthogonal: bool = False
    pairing: list = field(default_factory=list, repr=False)


def trace_data(tower: FieldTower, k: int | None = None, basis=None) -> TraceData:
    """Gram matrix of the trace form on ``basis`` (default: powers of θ) and its dual basis."""
    L, K, k = _step_towers(tower, k)
    d = L.steps[-1].degree
    sums = power_sums(L, 2 * d - 1)
    if basis is None:
        theta = L.gen()
        basis = [L.one()]
        for _ in range(d - 1):
            basis.append(basis[-1] * theta)
        gram = [[sums[i + j] for j in range(d)] for i in range(d)]
    else:
        basis = [L(b) for b in basis]
        if len(basis) != d:
            raise ValidationError(f"a basis of this step has {d} elements")
        gram = [[relative_trace(L, bi * bj, sums[:d]) for bj in basis] for bi in basis]
    try:
        B = inverse_matrix(gram)
    except PrecisionExhausted as exc:
        raise SingularGram(str(exc)) from None
    dual = []
    for i in range(d):
        acc = L.zero()
        for j in range(d):
            acc = acc + L.embed(B[j][i]) * basis[j]
        dual.append(acc)
    disc = sum(smith_normal_form(gram, K).invariants, Fraction(0))
    minv = min((b.vlow() for row in B for b in row if not b.is_zero()), default=Fraction(0))
    eK = K.e
    m = max(0, -int(minv * eK)) if minv < 0 else 0
    td = TraceData(k, basis, gram, B, dual, disc, m, Fraction(m, eK))
    pairing = [[relative_trace(L, bi * dj, sums[:d]) for dj in dual] for bi in basis]
    td.pairing = pairing
    td.orthogonal = all(
        (pairing[i][j] - (1 if i == j else 0)).is_zero() for i in range(d) for j in range(d)
    )
    return td


# -- differents ------------------------------------------------------------------------


@dataclass
class DifferentEntry:
    step: int
    degree: int
    kind: str
    v_delta: Fraction
    methods: dict  # method tag -> value
    agree: bool | None  # None when only one method ran
    precision: int


@dataclass
class DifferentReport:
    entries: list
    total: Fraction
    cross_check: str  # "agree", "disagree" or "skipped"
    absolute: Fraction | None = None  # flat trace-form value over the base, when computed
    absolute_check: str = "skipped"

    @property
    def disagreeing_steps(self) -> list:
        return [e.step for e in self.entries if e.agree is False]


def derivative_valuation(L: FieldTower):
    """``v(f'(θ))``, raising the precision once if it is not certified."""
    val = derivative_value(L).valuation()
    if isinstance(val, AtLeast):
        L2 = L.with_precision(2 * L.precision)
        val = derivative_value(L2).valuation()
        if isinstance(val, AtLeast):
            raise PrecisionExhausted(f"f'(θ) is zero even at precision {L2.precision}")
        return val, L2.precision
    return val, L.precision


def trace_dual_valuation(L: FieldTower) -> Fraction:
    """``v(δ)`` as the length of ``O_L^∨/O_L`` (the ``F_0`` of the Gram cokernel) over ``[L:K]``."""
    K = L.prefix(L.depth - 1)
    d = L.steps[-1].degree
    sums = power_sums(L, 2 * d - 1)
    gram = [[sums[i + j] for j in range(d)] for i in range(d)]
    M = PresentedModule(gram, K)
    if M.free_rank:
        raise SingularGram("trace form is degenerate at working precision")
    return M.length / d


def different(tower: FieldTower, k: int | None = None, cross_check: bool = True) -> DifferentEntry:
    L, _, k = _step_towers(tower, k)
    d = L.steps[-1].degree
    v, prec = derivative_valuation(L)
    methods = {DERIVATIVE: v}
    agree = None
    if cross_check:
        methods[TRACE_DUAL] = trace_dual_valuation(L)
        agree = methods[TRACE_DUAL] == v
    return DifferentEntry(k, d, L.steps[-1].kind, v, methods, agree, prec)


def absolute_trace_different(T: FieldTower) -> Fraction:
    """``v(δ(T/base))`` from the trace form on the flat monomial basis (one big Gram matrix)."""
    basis = T.monomial_reps()
    D = len(basis)
    base = T.prefix(0)
    gram = [[None] * D for _ in range(D)]
    for i in range(D):
        for j in range(i, D):
            t = absolute_trace(T, basis[i] * basis[j])
            gram[i][j] = gram[j][i] = t
    M = PresentedModule(gram, base)
    if M.free_rank:
        raise SingularGram("absolute trace form is degenerate at working precision")
    return M.length / D


def different_tower(tower: FieldTower, cross_check: bool = True, absolute: bool | None = None) -> DifferentReport:
    entries = [different(tower, k, cross_check) for k in range(1, tower.depth + 1)]
    total = sum((e.v_delta for e in entries), Fraction(0))
    if not cross_check:
        status = "skipped"
    else:
        status = "agree" if all(e.agree for e in entries) else "disagree"
    report = DifferentReport(entries, total, status)
    if absolute is None:
        absolute = cross_check and tower.degree <= ABSOLUTE_CHECK_MAX_DEGREE
    if absolute and tower.depth:
        report.absolute = absolute_trace_different(tower)
        report.absolute_check = "agree" if report.absolute == total else "disagree"
    return report


# -- Kähler differentials ----------------------------------------------------------------


@dataclass
class OmegaPresentation:
    step: int
    v_delta: Fraction
    zero: bool
    over_top: PresentedModule  # O_L/(f'(θ)) as an O_L-module
    over_base: PresentedModule  # the same module as an O_K-module
    invariants_top: list
    invariants_base: list
    consistent: bool  # base length = [L:K]·v(δ) and zero flag matches


@dataclass
class OmegaTowerReport:
    steps: list
    total: Fraction
    additive: bool
    absolute: Fraction | None = None


def omega(tower: FieldTower, k: int | None = None) -> OmegaPresentation:
    L, K, k = _step_towers(tower, k)
    d = L.steps[-1].degree
    fp = derivative_value(L)
    v, _ = derivative_valuation(L)
    over_top = PresentedModule.cyclic(L, fp)
    # multiplication by f'(θ) on the O_K-basis 1, θ, …, θ^{d-1}
    mat = L.arith.mult_matrix(fp.rep)
    vt = L.arith.vtheta
    rows = [[FieldElement(K, mat[i][j], fp.prec - i * vt) for i in range(d)] for j in range(d)]
    over_base = PresentedModule(rows, K)
    inv_top = over_top.nonzero_invariants()
    inv_base = over_base.nonzero_invariants()
    consistent = (
        over_base.free_rank == 0
        and sum(inv_base, Fraction(0)) == d * v
        and (v == 0) == over_base.is_zero()
        and over_top.invariants == [v]
    )
    return OmegaPresentation(k, v, v == 0, over_top, over_base, inv_top, inv_base, consistent)


def omega_tower(tower: FieldTower, absolute: bool | None = None) -> OmegaTowerReport:
    steps = [omega(tower, k) for k in range(1, tower.depth + 1)]
    total = sum((s.v_delta for s in steps), Fraction(0))
    rep = OmegaTowerReport(steps, total, True)
    if absolute is None:
        absolute = tower.degree <= ABSOLUTE_CHECK_MAX_DEGREE
    if absolute and tower.depth:
        rep.absolute = absolute_trace_different(tower)
        rep.additive = rep.absolute == total
    return rep


# -- tensor square B ⊗_A B = B[x]/(f) --------------------------------------------------------


class TensorSquare:
    """``B[x]/(f)`` for the top step ``B = O_L`` over ``A = O_K``; elements are coefficient lists."""

    def __init__(self, tower: FieldTower, k: int | None = None):
        L, _, k = _step_towers(tower, k)
        self.L = L
        self.step = k
        self.f = [L.embed(c) for c in step_poly(L)]
        self.d = len(self.f) - 1
        self.theta = L.gen()

    def element(self, coeffs) -> list:
        c = [self.L(x) for x in coeffs]
        return self.reduce(c + [self.L.zero()] * (self.d - len(c)))

    def reduce(self, c) -> list:
        c = list(c)
        d = self.d
        for k in range(len(c) - 1, d - 1, -1):
            top = c[k]
            if top.is_zero():
                continue
            for i in range(d):
                c[k - d + i] = c[k - d + i] - top * self.f[i]
        c = c[:d]
        return c + [self.L.zero()] * (d - len(c))

    def mul(self, a, b) -> list:
        out = [self.L.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self.reduce(out)

    def add(self, a, b) -> list:
        return [x + y for x, y in zip(a, b)]

    def sub(self, a, b) -> list:
        return [x - y for x, y in zip(a, b)]

    def scale(self, c, a) -> list:
        return [c * x for x in a]

    def one(self) -> list:
        return self.element([1])

    def x_minus_theta(self) -> list:
        if self.d == 1:
            return self.element([self.L.zero()])
        return self.element([-self.theta, 1])

    def mu(self, a) -> FieldElement:
        acc = self.L.zero()
        for c in reversed(a):
            acc = acc * self.theta + c
        return acc

    def is_zero(self, a) -> bool:
        return all(x.is_zero() for x in a)

    def is_integral(self, a) -> bool:
        return all(x.vlow() >= 0 for x in a)

    def cofactor(self):
        """``h`` with ``f(x) = (x - θ)·h(x)``; the remainder must vanish at precision."""
        q, rem = synthetic_division(self.f, self.theta)
        if not rem.is_zero():
            raise PrecisionExhausted("f(θ) is not zero at working precision")
        return q

    def diagonal_module(self) -> PresentedModule:
        """``J/J²`` over ``B`` on the basis ``x^i - θ^i`` (``i = 1..d-1``)."""
        d = self.d
        L = self.L
        if d == 1:
            return PresentedModule([], L, generators=0)
        gens = []
        for i in range(1, d):
            g = [L.zero()] * d
            g[i] = L.one()
            g[0] = -(self.theta ** i)
            gens.append(g)
        rows = []
        for i in range(len(gens)):
            for j in range(i, len(gens)):
                prod = self.mul(gens[i], gens[j])
                # μ(prod) = 0, so prod = Σ_{k≥1} c_k (x^k - θ^k)
                rows.append(prod[1:])
        return PresentedModule(rows, L, d - 1)


@dataclass
class TensorSquareReport:
    step: int
    jj2_invariants: list
    omega_invariants: list
    agree: bool
    mu_kills_diagonal: bool


def tensor_square(tower: FieldTower, k: int | None = None) -> tuple:
    """The ``B[x]/(f)`` model plus the ``J/J² ≅ O_L/(f'(θ))`` comparison."""
    ts = TensorSquare(tower, k)
    jj = ts.diagonal_module()
    v, _ = derivative_valuation(ts.L)
    om = [v] if v != 0 else []
    inv = jj.nonzero_invariants()
    agree = jj.free_rank == 0 and inv == om
    return ts, TensorSquareReport(ts.step, inv, om, agree, ts.mu(ts.x_minus_theta()).is_zero())


# -- idempotents ------------------------------------------------------------------------------

GENERIC_EXPONENT_PER_GENERATOR = 5


@dataclass
class EpsilonCheck:
    exponent: int  # ε = π_L^exponent
    valuation: Fraction
    integral: bool
    laws: bool | None  # e_ε² = ε e_ε, μ(e_ε) = ε, e_ε (x - θ) = 0, when integral


@dataclass
class IdempotentReport:
    step: int
    etale: bool
    v_delta: Fraction
    idempotent: list | None = None
    laws: dict = field(default_factory=dict)
    threshold: Fraction | None = None
    scan: list = field(default_factory=list)
    generators: int = 1
    generic_exponent: int = GENERIC_EXPONENT_PER_GENERATOR  # the ε^{5n} bound with n = generators of J

    @property
    def exact_idempotent(self) -> bool:
        return self.etale and all(self.laws.values())


def _epsilon_element(ts: TensorSquare, h, h_theta_inv, eps: FieldElement) -> list:
    c = eps * h_theta_inv
    return [c * x for x in h] + [ts.L.zero()] * (ts.d - len(h))


def idempotent(tower: FieldTower, k: int | None = None, eps=None, window: int = 2) -> IdempotentReport:
    """Exact idempotent ``e = h(x)/h(θ)`` in the étale case, else the sharp ε-threshold.

    ``eps`` (a rational valuation in ``(1/e)Z``) adds that ε to the scanned window.
    """
    ts = TensorSquare(tower, k)
    L = ts.L
    h = ts.cofactor() if ts.d > 1 else [L.one()]
    h_theta = ts.mu(h + [L.zero()] * (ts.d - len(h)))
    v = h_theta.valuation()
    if isinstance(v, AtLeast):
        L2 = L.with_precision(2 * L.precision)
        return idempotent(L2, None, eps, window)
    inv = h_theta.inverse()
    report = IdempotentReport(ts.step, v == 0, v)
    xt = ts.x_minus_theta()
    if v == 0:
        e = _epsilon_element(ts, h, inv, L.one())
        report.idempotent = e
        report.laws = {
            "e^2=e": ts.is_zero(ts.sub(ts.mul(e, e), e)),
            "mu(e)=1": (ts.mu(e) - 1).is_zero(),
            "e(x-theta)=0": ts.is_zero(ts.mul(e, xt)),
            "integral": ts.is_integral(e),
        }
        return report
    pi = L.uniformizer()
    eL = L.e
    j0 = int(v * eL)
    exps = set(range(max(0, j0 - window), j0 + window + 1))
    if eps is not None:
        ev = Fraction(eps) * eL
        if ev.denominator != 1 or ev < 0:
            raise ValidationError(f"ε valuation must be a non-negative element of (1/{eL})Z")
        exps.add(int(ev))
    for j in sorted(exps):
        e_eps = pi ** j
        el = _epsilon_element(ts, h, inv, e_eps)
        integral = ts.is_integral(el)
        laws = None
        if integral:
            laws = (
                ts.is_zero(ts.sub(ts.mul(el, el), ts.scale(e_eps, el)))
                and (ts.mu(el) - e_eps).is_zero()
                and ts.is_zero(ts.mul(el, xt))
            )
        report.scan.append(EpsilonCheck(j, Fraction(j, eL), integral, laws))
    ok = [c.valuation for c in report.scan if c.integral]
    bad = [c.valuation for c in report.scan if not c.integral]
    # the threshold is sharp when the scan brackets it
    if ok and (not bad or max(bad) < min(ok)):
        report.threshold = min(ok)
    return report
