"""JSON documents, element expressions and exact-rational encoding."""
from __future__ import annotations

import ast
import json
from fractions import Fraction
from pathlib import Path

from .errors import ValidationError
from .localfield import AtLeast, FieldElement, FieldTower, adjoin, builtin_towers
from .localfield.tower import DEFAULT_PRECISION, EISENSTEIN, UNRAMIFIED
from .valuegroup import ValueGroup

ADJOIN_KINDS = ("adjoin", "kummer", "artin-schreier")


# -- rationals ---------------------------------------------------------------------------


def q(x) -> list:
    """Exact rational as ``[num, den]``."""
    x = Fraction(x)
    return [x.numerator, x.denominator]


def qv(v):
    """A valuation: ``[num, den]`` or ``{"at_least": [num, den]}``; ``None`` stays ``None``."""
    if v is None:
        return None
    if isinstance(v, AtLeast):
        return v.to_json()
    return q(v)


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, list) and len(x) == 2 and all(isinstance(c, int) for c in x):
        if x[1] == 0:
            raise ValidationError("zero denominator")
        return Fraction(x[0], x[1])
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(f"cannot read {x!r} as an exact rational")


def parse_range(text: str) -> list:
    """``"1..4"`` → ``[1, 2, 3, 4]``; also accepts ``"3"`` and ``"1,3,5"``."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise ValidationError("empty range")
            return list(range(a, b + 1))
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise ValidationError(f"bad range {text!r}; use e.g. 1..4") from None


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


# -- expressions ---------------------------------------------------------------------------


class _Poly:
    """Polynomial in ``x`` over a tower, only for expression evaluation."""

    def __init__(self, coeffs):
        self.c = list(coeffs)

    def _lift(self, o, T):
        return o if isinstance(o, _Poly) else _Poly([T(o)])

    def _T(self):
        return self.c[0].tower

    def __add__(self, o):
        o = self._lift(o, self._T())
        n = max(len(self.c), len(o.c))
        z = self._T().zero()
        return _Poly([(self.c[i] if i < len(self.c) else z) + (o.c[i] if i < len(o.c) else z) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return _Poly([-a for a in self.c])

    def __sub__(self, o):
        return self + (-self._lift(o, self._T()))

    def __rsub__(self, o):
        return self._lift(o, self._T()) - self

    def __mul__(self, o):
        o = self._lift(o, self._T())
        out = [self._T().zero()] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] = out[i + j] + a * b
        return _Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, _Poly):
            if len(o.c) != 1:
                raise ValidationError("division by a polynomial in x")
            o = o.c[0]
        inv = self._T()(o).inverse()
        return _Poly([a * inv for a in self.c])

    def __pow__(self, n):
        out = _Poly([self._T().one()])
        for _ in range(n):
            out = out * self
        return out


_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}


def _names(tower: FieldTower, allow_x: bool) -> dict:
    env = {"p": tower(tower.p) if tower.base.kind == "padic" else tower(0)}
    for k in range(1, tower.depth + 1):
        env[f"th{k}"] = tower.gen(k)
        env[tower.steps[k - 1].symbol] = tower.gen(k)
    if tower.base.kind == "laurent":
        env["t"] = tower(tower.base.uniformizer())
    if allow_x:
        env["x"] = _Poly([tower.zero(), tower.one()])
    return env


def _eval(node, env, tower):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env, tower)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return tower(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ValidationError(f"unknown name {node.id!r}; known: {', '.join(sorted(env))}")
        return env[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, env, tower)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _eval(node.left, env, tower)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValidationError("exponents must be integer literals")
            n = node.right.value
            if isinstance(a, _Poly) and n < 0:
                raise ValidationError("negative power of x")
            return a ** n
        b = _eval(node.right, env, tower)
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ValidationError(f"operator {type(node.op).__name__} not allowed")
        if isinstance(b, _Poly) and not isinstance(a, _Poly):
            a = _Poly([a])
        return getattr(a, op)(b)
    raise ValidationError(f"unsupported expression element {ast.dump(node)[:40]}")


def _parse(text: str):
    # ``^`` is accepted as exponentiation; there is no xor here
    return ast.parse(text.strip().replace("^", "**"), mode="eval")


def parse_element(tower: FieldTower, text: str) -> FieldElement:
    """Evaluate an arithmetic expression in ``th1…thk``, ``p`` (and ``t`` over F_p((t)))."""
    try:
        tree = _parse(text)
    except SyntaxError:
        raise ValidationError(f"cannot parse expression {text!r}") from None
    v = _eval(tree, _names(tower, False), tower)
    return v


def parse_poly(tower: FieldTower, text: str) -> list:
    """Coefficients (lowest first) of a polynomial expression in ``x``."""
    try:
        tree = _parse(text)
    except SyntaxError:
        raise ValidationError(f"cannot parse polynomial {text!r}") from None
    v = _eval(tree, _names(tower, True), tower)
    if isinstance(v, FieldElement):
        return [v]
    c = list(v.c)
    while len(c) > 1 and c[-1].is_zero():
        c.pop()
    return c


# -- towers ------------------------------------------------------------------------------------


def parse_coefficient(tower: FieldTower, c):
    """One coefficient over ``tower``: int, ``[num, den]`` (base level), expression string,
    Laurent dict, or a list of coefficients one level down."""
    if isinstance(c, FieldElement):
        return tower(c)
    if isinstance(c, str):
        return parse_element(tower, c)
    if isinstance(c, bool):
        raise ValidationError("booleans are not coefficients")
    if tower.depth == 0:
        return tower(c)
    if isinstance(c, list):
        d = tower.steps[-1].degree
        if len(c) != d:
            raise ValidationError(f"expected {d} coefficients over level {tower.depth - 1}, got {len(c)}")
        lower = tower.prefix(tower.depth - 1)
        parts = [parse_coefficient(lower, x) for x in c]
        acc = tower.zero()
        theta = tower.gen()
        for part in reversed(parts):
            acc = acc * theta + tower.embed(part)
        return acc
    return tower(c)


def _parse_poly_field(tower: FieldTower, poly) -> list:
    if isinstance(poly, str):
        return parse_poly(tower, poly)
    if not isinstance(poly, list):
        raise ValidationError("a step polynomial is a coefficient list (lowest degree first) or a string in x")
    return [parse_coefficient(tower, c) for c in poly]


def load_tower(doc, precision: int | None = None) -> FieldTower:
    """Build a tower from its JSON description (``precision`` overrides the document)."""
    if not isinstance(doc, dict):
        raise ValidationError("a tower document is a JSON object")
    if "builtin" in doc:
        params = {k: v for k, v in doc.items() if k != "builtin"}
        if precision is not None:
            params["precision"] = precision
        if doc["builtin"] == "constant" and isinstance(params.get("base"), dict):
            params["base"] = load_tower(params["base"], precision)
        return builtin_towers(doc["builtin"], **params)
    base = doc.get("base")
    if not isinstance(base, dict) or "p" not in base:
        raise ValidationError('tower document needs "base": {"p": ..., "precision": ...}')
    N = precision if precision is not None else int(base.get("precision", DEFAULT_PRECISION))
    kind = base.get("kind", "padic")
    if kind == "padic":
        T = FieldTower.padic(int(base["p"]), N)
    elif kind == "laurent":
        T = FieldTower.laurent(int(base["p"]), N)
    else:
        raise ValidationError(f"unknown base kind {kind!r}")
    for i, step in enumerate(doc.get("steps", []), 1):
        if not isinstance(step, dict) or "poly" not in step:
            raise ValidationError(f"step {i} needs a poly")
        poly = _parse_poly_field(T, step["poly"])
        skind = step.get("kind", EISENSTEIN)
        if skind in (EISENSTEIN, UNRAMIFIED):
            T = T.extend(poly, skind, step.get("symbol"))
        elif skind in ADJOIN_KINDS:
            T = adjoin(T, poly).tower
        else:
            raise ValidationError(f"unknown step kind {skind!r}")
    return T


def _rep_json(tower: FieldTower, rep, depth: int):
    if depth == 0:
        return tower.base.to_json(rep)
    return [_rep_json(tower, c, depth - 1) for c in rep]


def element_json(x: FieldElement):
    """Nested coefficient lists of an element (base-level entries as ``[num, den]``)."""
    return _rep_json(x.tower, x.rep, x.tower.depth)


def tower_to_json(T: FieldTower) -> dict:
    steps = []
    for k, s in enumerate(T.steps):
        steps.append({"kind": s.kind, "symbol": s.symbol, "poly": [_rep_json(T, c, k) for c in s.poly]})
    return {"base": {"p": T.p, "precision": T.precision, "kind": T.base.kind}, "steps": steps}


# -- problems ------------------------------------------------------------------------------------


def load_defect(doc) -> dict:
    if not isinstance(doc, dict) or "p" not in doc or "sequence" not in doc:
        raise ValidationError('defect problem needs "p" and "sequence"')
    p = int(doc["p"])
    seq = doc["sequence"]
    terms = [parse_rational(t) for t in seq.get("terms", [])]
    if "infimum" not in seq:
        raise ValidationError("the sequence needs a declared infimum")
    group = ValueGroup.from_json(doc["group"]) if "group" in doc else ValueGroup((p,))
    return {
        "p": p,
        "terms": terms,
        "infimum": parse_rational(seq["infimum"]),
        "attained": seq.get("attained"),
        "group": group,
    }
