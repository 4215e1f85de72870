"""Admissible weight functions: a small expression DSL plus built-ins.

A weight phi must be nonnegative, nonincreasing, and convex on [T0, oo).
Those conditions cannot be certified by sampling, so construction checks
them on a geometric grid (extended lazily past any point actually
evaluated) and refuses on the first violation; the residual assumption --
that the inequalities hold between and beyond the samples -- is the
caller's, and is documented rather than papered over.

The AST is deliberately tiny: constants (exact rationals), t, pi, neg,
log, exp, and the four arithmetic operators plus pow.  Derivatives are
exact ASTs with constant folding; non-integer powers differentiate through
the exp/log rewrite so the power rule is only ever applied to literal
integer exponents.

Parse-time folding collapses constant subtrees (including unary minus on a
literal), which is what makes print -> parse a structural identity: the
printer may emit "3/2" or "-2" and the parser folds both back into single
constant nodes.
"""

from __future__ import annotations

import decimal
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .ball import Ball, ball_exp, ball_log, ball_pi, ball_pow
from .errors import AdmissibilityError, DomainError, ParseError

# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Log:
    arg: "Expr"


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


Expr = Const | Var | Pi | Neg | Log | Exp | Add | Sub | Mul | Div | Pow

_ZERO = Const(Fraction(0))
_ONE = Const(Fraction(1))


# -- parser --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)(?:[eE]([+-]?\d+))?|([A-Za-z_]\w*)|([-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            at = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"phifunc.parse: unexpected character {text[at]!r}", at)
        num, expo, ident, op = m.groups()
        start = m.end() - len(m.group().lstrip())
        if num is not None:
            q = Fraction(decimal.Decimal(num + (f"e{expo}" if expo else "")))
            tokens.append(("num", q, start))
        elif ident is not None:
            tokens.append(("ident", ident, start))
        else:
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"phifunc.parse: expected {op!r}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"phifunc.parse: trailing input at {val!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                e = _fold_add(e, rhs) if val == "+" else _fold_sub(e, rhs)
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                e = _fold_mul(e, rhs) if val == "*" else _fold_div(e, rhs)
            else:
                return e

    def factor(self) -> Expr:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return _fold_neg(self.factor())
        b = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return _fold_pow(b, self.factor())  # right-associative
        return b

    def base(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            return Const(val)
        if kind == "ident":
            if val == "t":
                return Var()
            if val == "pi":
                return Pi()
            if val in ("log", "exp"):
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Log(arg) if val == "log" else Exp(arg)
            raise ParseError(f"phifunc.parse: unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"phifunc.parse: unexpected {val!r}", pos)


def parse_phi(text: str) -> Expr:
    """Parse the weight DSL; see module docstring for the grammar."""
    return _Parser(text).parse()


# -- constant folding ----------------------------------------------------------


def _fold_neg(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(-e.value)
    return Neg(e)


def _fold_add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if a == _ZERO:
        return b
    if b == _ZERO:
        return a
    return Add(a, b)


def _fold_sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if b == _ZERO:
        return a
    if a == _ZERO:
        return _fold_neg(b)
    return Sub(a, b)


def _fold_mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if a == _ZERO or b == _ZERO:
        return _ZERO
    if a == _ONE:
        return b
    if b == _ONE:
        return a
    return Mul(a, b)


def _fold_div(a: Expr, b: Expr) -> Expr:
    if isinstance(b, Const) and b.value == 0:
        raise DomainError("phifunc: division by literal zero")
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    if a == _ZERO:
        return _ZERO
    if b == _ONE:
        return a
    return Div(a, b)


def _fold_pow(base: Expr, expo: Expr) -> Expr:
    if expo == _ONE:
        return base
    if isinstance(expo, Const) and expo.value == 0:
        return _ONE
    if (
        isinstance(base, Const)
        and isinstance(expo, Const)
        and expo.value.denominator == 1
    ):
        return Const(base.value ** int(expo.value))
    return Pow(base, expo)


# -- differentiation -----------------------------------------------------------


def differentiate(ast: Expr) -> Expr:
    """Symbolic d/dt with constant folding.

    Literal integer exponents use the power rule.  Everything else routes
    through the exp/log rewrite u^e = exp(e log u), whose chain-rule
    derivative is re-expressed with the original Pow node:
        (u^e)' = u^e * (e' log u + e u'/u).
    """
    if isinstance(ast, (Const, Pi)):
        return _ZERO
    if isinstance(ast, Var):
        return _ONE
    if isinstance(ast, Neg):
        return _fold_neg(differentiate(ast.arg))
    if isinstance(ast, Add):
        return _fold_add(differentiate(ast.left), differentiate(ast.right))
    if isinstance(ast, Sub):
        return _fold_sub(differentiate(ast.left), differentiate(ast.right))
    if isinstance(ast, Mul):
        u, v = ast.left, ast.right
        return _fold_add(
            _fold_mul(differentiate(u), v), _fold_mul(u, differentiate(v))
        )
    if isinstance(ast, Div):
        u, v = ast.left, ast.right
        num = _fold_sub(
            _fold_mul(differentiate(u), v), _fold_mul(u, differentiate(v))
        )
        return _fold_div(num, _fold_pow(v, Const(Fraction(2))))
    if isinstance(ast, Log):
        return _fold_div(differentiate(ast.arg), ast.arg)
    if isinstance(ast, Exp):
        return _fold_mul(ast, differentiate(ast.arg))
    if isinstance(ast, Pow):
        u, e = ast.base, ast.exponent
        du = differentiate(u)
        if isinstance(e, Const) and e.value.denominator == 1:
            n = e.value
            return _fold_mul(
                _fold_mul(Const(n), _fold_pow(u, Const(n - 1))), du
            )
        de = differentiate(e)
        inner = _fold_add(
            _fold_mul(de, Log(u)), _fold_div(_fold_mul(e, du), u)
        )
        return _fold_mul(ast, inner)
    raise DomainError(f"phifunc.differentiate: unknown node {ast!r}")


# -- evaluation ----------------------------------------------------------------


def eval_ball(ast: Expr, t: Ball) -> Ball:
    if isinstance(ast, Const):
        return Ball.exact(ast.value)
    if isinstance(ast, Var):
        return t
    if isinstance(ast, Pi):
        return ball_pi()
    if isinstance(ast, Neg):
        return -eval_ball(ast.arg, t)
    if isinstance(ast, Log):
        return ball_log(eval_ball(ast.arg, t))
    if isinstance(ast, Exp):
        return ball_exp(eval_ball(ast.arg, t))
    if isinstance(ast, Add):
        return eval_ball(ast.left, t) + eval_ball(ast.right, t)
    if isinstance(ast, Sub):
        return eval_ball(ast.left, t) - eval_ball(ast.right, t)
    if isinstance(ast, Mul):
        return eval_ball(ast.left, t) * eval_ball(ast.right, t)
    if isinstance(ast, Div):
        return eval_ball(ast.left, t) / eval_ball(ast.right, t)
    if isinstance(ast, Pow):
        base = eval_ball(ast.base, t)
        e = ast.exponent
        if isinstance(e, Const):
            if e.value.denominator == 1:
                return ball_pow(base, int(e.value))
            return ball_pow(base, e.value)
        return ball_exp(eval_ball(e, t) * ball_log(base))
    raise DomainError(f"phifunc.eval: unknown node {ast!r}")


def eval_float(ast: Expr, t: float) -> float:
    try:
        return _eval_float(ast, t)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"phifunc.eval: {exc} at t={t!r}") from exc


def _eval_float(ast: Expr, t: float) -> float:
    if isinstance(ast, Const):
        return float(ast.value)
    if isinstance(ast, Var):
        return t
    if isinstance(ast, Pi):
        return math.pi
    if isinstance(ast, Neg):
        return -_eval_float(ast.arg, t)
    if isinstance(ast, Log):
        return math.log(_eval_float(ast.arg, t))
    if isinstance(ast, Exp):
        return math.exp(_eval_float(ast.arg, t))
    if isinstance(ast, Add):
        return _eval_float(ast.left, t) + _eval_float(ast.right, t)
    if isinstance(ast, Sub):
        return _eval_float(ast.left, t) - _eval_float(ast.right, t)
    if isinstance(ast, Mul):
        return _eval_float(ast.left, t) * _eval_float(ast.right, t)
    if isinstance(ast, Div):
        return _eval_float(ast.left, t) / _eval_float(ast.right, t)
    if isinstance(ast, Pow):
        b = _eval_float(ast.base, t)
        if isinstance(ast.exponent, Const) and ast.exponent.value.denominator == 1:
            return b ** int(ast.exponent.value)
        e = _eval_float(ast.exponent, t)
        if b <= 0.0:
            raise ValueError("non-integer power of a non-positive base")
        return b**e
    raise DomainError(f"phifunc.eval: unknown node {ast!r}")


# -- pretty printer -------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def to_text(ast: Expr) -> str:
    """Render an AST; parse_phi(to_text(a)) is structurally identical to a."""
    return _render(ast, 0)


def _const_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    # terminating decimals render exactly; others as a quotient the parser folds
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        return str(decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator))
    return f"{q.numerator}/{q.denominator}"


def _render(ast: Expr, parent_prec: int) -> str:
    if isinstance(ast, Const):
        s = _const_str(ast.value)
        needs = ("-" in s and parent_prec > 0) or ("/" in s and parent_prec >= _PREC_MUL)
        return f"({s})" if needs else s
    if isinstance(ast, Var):
        return "t"
    if isinstance(ast, Pi):
        return "pi"
    if isinstance(ast, Log):
        return f"log({_render(ast.arg, 0)})"
    if isinstance(ast, Exp):
        return f"exp({_render(ast.arg, 0)})"
    if isinstance(ast, Neg):
        s = f"-{_render(ast.arg, _PREC_NEG)}"
        return f"({s})" if parent_prec > _PREC_MUL else s
    if isinstance(ast, (Add, Sub)):
        op = "+" if isinstance(ast, Add) else "-"
        s = f"{_render(ast.left, _PREC_ADD)} {op} {_render(ast.right, _PREC_ADD + 1)}"
        return f"({s})" if parent_prec > _PREC_ADD else s
    if isinstance(ast, (Mul, Div)):
        op = "*" if isinstance(ast, Mul) else "/"
        s = f"{_render(ast.left, _PREC_MUL)} {op} {_render(ast.right, _PREC_MUL + 1)}"
        return f"({s})" if parent_prec > _PREC_MUL else s
    if isinstance(ast, Pow):
        s = f"{_render(ast.base, _PREC_POW + 1)}^{_render(ast.exponent, _PREC_POW)}"
        return f"({s})" if parent_prec > _PREC_POW else s
    raise DomainError(f"phifunc.to_text: unknown node {ast!r}")


# -- PhiSpec and admissibility ---------------------------------------------------

_GRID_POINTS = 512
_FD_POINTS = 20
_FD_RTOL = 1e-6
_SIGN_SLACK = 1e-11  # relative slack for float sign checks on the grid

# domain start for the 1/log^2 weight: 2 pi mu, with mu the positive root of
# li = 0; below this point the weight's main integral li(t/2pi) is negative
_SOLDNER = 1.4513692348833810502839684858920274494930322836480158630930
_T0_LOG_SQ = 2.0 * math.pi * _SOLDNER


@dataclass(frozen=True, eq=False)
class PhiSpec:
    """A validated weight function with exact derivative ASTs.

    tail_antiderivative, when present, is F(t) with F'(t) = phi(t) log(t/2pi)
    (the integrand of the smooth main term); builtin names let integral
    dispatch recognize the one family whose antiderivative (li) has no DSL
    form.
    """

    body: Expr
    d1: Expr
    d2: Expr
    T0: float
    tail_antiderivative: Expr | None = None
    builtin: str | None = None
    param: Fraction | None = None
    _validated_to: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if not self.T0 >= 2 * math.pi * (1 - 1e-12):
            raise DomainError(
                f"phifunc.make_phi: T0={self.T0!r} below 2*pi"
            )
        hi = self.T0 * 1e3
        _check_grid(self, self.T0, hi, _GRID_POINTS, check_fd=True)
        self._validated_to.append(hi)


def _check_grid(spec: PhiSpec, lo: float, hi: float, n: int, check_fd: bool) -> None:
    ratio = (hi / lo) ** (1.0 / (n - 1))
    fd_every = max(1, n // _FD_POINTS)
    t = lo
    for i in range(n):
        try:
            v = eval_float(spec.body, t)
            d1 = eval_float(spec.d1, t)
            d2 = eval_float(spec.d2, t)
        except DomainError as exc:
            raise AdmissibilityError(
                f"phifunc.make_phi: evaluation failed on the grid: {exc}"
            ) from exc
        scale = abs(v) + abs(d1) * t + abs(d2) * t * t + 1e-300
        if v < -_SIGN_SLACK * scale:
            raise AdmissibilityError(
                f"phifunc.make_phi: phi < 0 at t={t:.6g} (phi={v:.6g})"
            )
        if d1 > _SIGN_SLACK * scale / t:
            raise AdmissibilityError(
                f"phifunc.make_phi: phi' > 0 at t={t:.6g} (phi'={d1:.6g})"
            )
        if d2 < -_SIGN_SLACK * scale / (t * t):
            raise AdmissibilityError(
                f"phifunc.make_phi: phi'' < 0 at t={t:.6g} (phi''={d2:.6g})"
            )
        if check_fd and i % fd_every == 0:
            _check_fd(spec, t)
        t *= ratio


def _check_fd(spec: PhiSpec, t: float) -> None:
    h = t * 2e-6
    for f, df, name in (
        (spec.body, spec.d1, "phi'"),
        (spec.d1, spec.d2, "phi''"),
    ):
        fd = (eval_float(f, t + h) - eval_float(f, t - h)) / (2 * h)
        want = eval_float(df, t)
        if abs(fd - want) > _FD_RTOL * max(1.0, abs(want)):
            raise AdmissibilityError(
                f"phifunc.make_phi: symbolic {name} disagrees with finite "
                f"differences at t={t:.6g} ({want:.9g} vs {fd:.9g})"
            )


def _extend_validation(spec: PhiSpec, t: float) -> None:
    hi = spec._validated_to[0]
    if t <= hi:
        return
    new_hi = 10.0 * t
    _check_grid(spec, hi, new_hi, 128, check_fd=False)
    spec._validated_to[0] = new_hi


def _eval_spec(spec: PhiSpec, ast: Expr, t: Ball) -> Ball:
    tf = float(t.mid)
    if tf < spec.T0 * (1 - 1e-12):
        raise DomainError(
            f"phifunc.eval: t={tf!r} below the domain start T0={spec.T0!r}"
        )
    _extend_validation(spec, tf)
    return eval_ball(ast, t)


def eval_phi(spec: PhiSpec, t: Ball) -> Ball:
    return _eval_spec(spec, spec.body, t)


def eval_dphi(spec: PhiSpec, t: Ball) -> Ball:
    return _eval_spec(spec, spec.d1, t)


def eval_d2phi(spec: PhiSpec, t: Ball) -> Ball:
    return _eval_spec(spec, spec.d2, t)


# -- built-ins -----------------------------------------------------------------


def _t() -> Expr:
    return Var()


def _log_t_over_2pi() -> Expr:
    return Log(Div(_t(), Mul(Const(Fraction(2)), Pi())))


def _inv_power_tail(c: Fraction) -> Expr:
    # F(t) = t^(1-c)/(1-c) * (log(t/2pi) - 1/(1-c)); F' = t^-c log(t/2pi)
    one_minus_c = Const(Fraction(1) - c)
    return Mul(
        Div(Pow(_t(), one_minus_c), one_minus_c),
        Sub(_log_t_over_2pi(), Div(_ONE, one_minus_c)),
    )


def _builtin_parts(name: str, param: Fraction | None):
    if name == "inv_power":
        if param is None:
            raise DomainError("phifunc.make_phi: inv_power needs a parameter c")
        if not param > 0:
            raise DomainError("phifunc.make_phi: inv_power needs c > 0")
        body = Pow(_t(), Const(-param))
        tail = _inv_power_tail(param) if param > 1 else None
        return body, 2 * math.pi, tail
    if param is not None:
        raise DomainError(f"phifunc.make_phi: builtin {name!r} takes no parameter")
    if name == "inv_t":
        # F = log^2(t/2pi)/2
        tail = Div(Pow(_log_t_over_2pi(), Const(Fraction(2))), Const(Fraction(2)))
        return Div(_ONE, _t()), 2 * math.pi, tail
    if name == "inv_square":
        return Pow(_t(), Const(Fraction(-2))), 2 * math.pi, _inv_power_tail(Fraction(2))
    if name == "inv_log_sq":
        body = Div(_ONE, Pow(_log_t_over_2pi(), Const(Fraction(2))))
        return body, _T0_LOG_SQ, None  # main integral is li(t/2pi); no DSL form
    if name == "inv_t2_plus_quarter":
        body = Div(_ONE, Add(Pow(_t(), Const(Fraction(2))), Const(Fraction(1, 4))))
        return body, 2 * math.pi, None
    raise DomainError(f"phifunc.make_phi: unknown builtin {name!r}")


BUILTIN_NAMES = ("inv_power", "inv_t", "inv_square", "inv_log_sq", "inv_t2_plus_quarter")


def make_phi(text: str, T0: float | None = None) -> PhiSpec:
    """Build and validate a weight from DSL text or "builtin:name[:param]"."""
    text = text.strip()
    if text.startswith("builtin:"):
        parts = text.split(":")
        name = parts[1] if len(parts) > 1 else ""
        param = None
        if len(parts) == 3:
            try:
                param = Fraction(decimal.Decimal(parts[2]))
            except decimal.InvalidOperation as exc:
                raise DomainError(
                    f"phifunc.make_phi: bad builtin parameter {parts[2]!r}"
                ) from exc
        elif len(parts) > 3:
            raise DomainError(f"phifunc.make_phi: bad builtin syntax {text!r}")
        body, default_t0, tail = _builtin_parts(name, param)
        builtin, par = name, param
    else:
        body = parse_phi(text)
        default_t0, tail, builtin, par = 2 * math.pi, None, None, None
    d1 = differentiate(body)
    d2 = differentiate(d1)
    return PhiSpec(
        body=body,
        d1=d1,
        d2=d2,
        T0=float(T0) if T0 is not None else default_t0,
        tail_antiderivative=tail,
        builtin=builtin,
        param=par,
    )
