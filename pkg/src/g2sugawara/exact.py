"""Exact ground arithmetic.

``ExactScalar`` is an element ``a + b*sqrt(2)`` of the quadratic field with
rational ``a`` and ``b``.  ``ParamPolynomial`` is a sparse polynomial in the
named parameters ``K``, ``mu1``, ``mu2`` and ``RationalFunctionU`` a reduced
univariate rational function in ``u``.

All three interoperate with plain ``int`` and ``Fraction`` so hot loops can
stay on Python integers whenever the values happen to be rational.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def _render_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class ExactScalar:
    """``a + b*sqrt(2)`` with ``a, b`` rational.  Immutable."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return cls(x, 0)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def simplify(self) -> Union["ExactScalar", Fraction, int]:
        """Return a plain ``int``/``Fraction`` when the value is rational."""
        if self.b:
            return self
        if self.a.denominator == 1:
            return self.a.numerator
        return self.a

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b)

    def __pos__(self) -> "ExactScalar":
        return self

    def __add__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            a, b, c, d = self.a, self.b, other.a, other.b
            return ExactScalar(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("ExactScalar division by zero")
        return ExactScalar(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, ExactScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("ExactScalar division by zero")
            return ExactScalar(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int) -> "ExactScalar":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ExactScalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def render(self) -> str:
        head = _render_fraction(self.a)
        if not self.b:
            return head
        sign = "-" if self.b < 0 else "+"
        return f"{head}{sign}{_render_fraction(abs(self.b))}*s2"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ExactScalar({self.render()!r})"


SQRT2 = ExactScalar(0, 1)

_SCALAR_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)\s*"
    r"(?:(?P<sign>[+-])\s*(?P<b>\+?-?\d+(?:/\d+)?)\s*\*\s*s2)?\s*$"
)
_PURE_S2_RE = re.compile(r"^\s*(?P<b>[+-]?\d+(?:/\d+)?)\s*\*\s*s2\s*$")


def parse_scalar(text: str) -> ExactScalar:
    """Parse the ``p/q`` or ``p/q+r/s*s2`` textual format."""
    m = _SCALAR_RE.match(text)
    if m is None:
        m2 = _PURE_S2_RE.match(text)
        if m2 is None:
            raise ValueError(f"malformed scalar {text!r}")
        return ExactScalar(0, Fraction(m2.group("b")))
    a = Fraction(m.group("a"))
    b = Fraction(0)
    if m.group("b") is not None:
        b = Fraction(m.group("b").lstrip("+"))
        if m.group("sign") == "-":
            b = -b
    return ExactScalar(a, b)


def render_scalar(x) -> str:
    """Render an ``int``, ``Fraction`` or ``ExactScalar`` in scalar format."""
    return ExactScalar.coerce(x).render() if not isinstance(x, ExactScalar) else x.render()


def to_exact(x) -> ExactScalar:
    return ExactScalar.coerce(x)


def simplify(x):
    """Demote an exact scalar to ``int``/``Fraction`` when possible."""
    if isinstance(x, ExactScalar):
        return x.simplify()
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------------------
# Polynomials in the named parameters


PARAMS: tuple[str, ...] = ("K", "mu1", "mu2")
_PARAM_INDEX = {name: i for i, name in enumerate(PARAMS)}


class ParamPolynomial:
    """Sparse polynomial in ``K, mu1, mu2`` with exact coefficients.

    Exponent vectors are tuples aligned with :data:`PARAMS`.  Zero
    coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None) -> None:
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = simplify(c)
                if c:
                    exps = tuple(exps)
                    if len(exps) != len(PARAMS):
                        raise ValueError("exponent vector has wrong length")
                    clean[exps] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ParamPolynomial is immutable")

    @classmethod
    def constant(cls, c) -> "ParamPolynomial":
        return cls({(0,) * len(PARAMS): c})

    @classmethod
    def variable(cls, name: str) -> "ParamPolynomial":
        exps = [0] * len(PARAMS)
        exps[_PARAM_INDEX[name]] = 1
        return cls({tuple(exps): 1})

    @classmethod
    def coerce(cls, x) -> "ParamPolynomial":
        if isinstance(x, ParamPolynomial):
            return x
        return cls.constant(x)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(PARAMS), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self == ParamPolynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, (ParamPolynomial, int, Fraction, ExactScalar)):
            return NotImplemented
        other = ParamPolynomial.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ParamPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (ParamPolynomial, int, Fraction, ExactScalar)):
            return NotImplemented
        return self + (-ParamPolynomial.coerce(other))

    def __rsub__(self, other):
        return ParamPolynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            if not other:
                return ParamPolynomial()
            return ParamPolynomial({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ParamPolynomial):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPolynomial":
        result = ParamPolynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, **values):
        """Substitute numeric values for some parameters.

        Returns a plain scalar when every remaining exponent vanishes.
        """
        out: dict = {}
        for e, c in self.terms.items():
            coeff = c
            rest = list(e)
            for name, val in values.items():
                i = _PARAM_INDEX[name]
                if rest[i]:
                    coeff = coeff * (val ** rest[i])
                    rest[i] = 0
            key = tuple(rest)
            out[key] = out.get(key, 0) + coeff
        poly = ParamPolynomial(out)
        if poly.is_constant():
            return simplify(poly.constant_value())
        return poly

    def render(self) -> str:
        if not self.terms:
            return "0/1"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(PARAMS, e) if k
            )
            coeff = render_scalar(self.terms[e])
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ParamPolynomial({self.render()!r})"


K = ParamPolynomial.variable("K")


def parse_param_polynomial(text: str) -> ParamPolynomial:
    """Inverse of :meth:`ParamPolynomial.render`."""
    text = text.strip()
    if text in ("0", "0/1"):
        return ParamPolynomial()
    out: dict = {}
    for chunk in text.split(" + "):
        m = re.match(r"^\((?P<c>[^)]*)\)(?:\*(?P<mono>.+))?$", chunk.strip())
        if m is None:
            raise ValueError(f"malformed polynomial term {chunk!r}")
        exps = [0] * len(PARAMS)
        if m.group("mono"):
            for factor in m.group("mono").split("*"):
                name, _, power = factor.partition("^")
                exps[_PARAM_INDEX[name]] += int(power) if power else 1
        out[tuple(exps)] = parse_scalar(m.group("c")).simplify()
    return ParamPolynomial(out)


# ---------------------------------------------------------------------------
# Univariate polynomials and rational functions in u


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _div(a, b):
    if isinstance(a, ExactScalar) or isinstance(b, ExactScalar):
        return simplify(ExactScalar.coerce(a) / b)
    return simplify(Fraction(a) / b)


class UPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        object.__setattr__(self, "coeffs", tuple(_trim([simplify(c) for c in coeffs])))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self):
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = a[i] + c
        return UPoly(a)

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.lead()
        while len(rem) >= len(other.coeffs) and rem:
            shift = len(rem) - len(other.coeffs)
            factor = _div(rem[-1], lead)
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[i + shift] = simplify(rem[i + shift] - factor * c)
            rem.pop()
            _trim(rem)
        return UPoly(quot), UPoly(rem)

    def monic(self) -> "UPoly":
        lead = self.lead()
        return UPoly([_div(c, lead) for c in self.coeffs])

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return simplify(acc)

    def render(self) -> list[str]:
        return [render_scalar(c) for c in self.coeffs]


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if a else a


class RationalFunctionU:
    """Reduced rational function ``num/den`` in ``u`` with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly | Iterable = (), den: UPoly | Iterable = (1,)) -> None:
        num = num if isinstance(num, UPoly) else UPoly(num)
        den = den if isinstance(den, UPoly) else UPoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = UPoly(), UPoly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lead = den.lead()
            num = UPoly([_div(c, lead) for c in num.coeffs])
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunctionU is immutable")

    @classmethod
    def constant(cls, c) -> "RationalFunctionU":
        return cls(UPoly([c]))

    @classmethod
    def simple_pole(cls, residue, z, order: int = 1) -> "RationalFunctionU":
        """``residue / (u - z)**order``."""
        den = UPoly([1])
        for _ in range(order):
            den = den * UPoly([-z, 1])
        return cls(UPoly([residue]), den)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunctionU):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self == RationalFunctionU.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunctionU":
        return RationalFunctionU(-self.num, self.den)

    def _coerce(self, other) -> "RationalFunctionU":
        if isinstance(other, RationalFunctionU):
            return other
        return RationalFunctionU.constant(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunctionU(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunctionU(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunctionU(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int) -> "RationalFunctionU":
        out = RationalFunctionU.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "RationalFunctionU":
        return RationalFunctionU(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def scaled_derivative(self, r: int) -> "RationalFunctionU":
        """``(d/du)**r / r!`` applied to this function."""
        out = self
        for k in range(1, r + 1):
            out = out.derivative() * Fraction(1, k)
        return out

    def __call__(self, u):
        d = self.den(u)
        if not d:
            raise ZeroDivisionError(f"pole at u = {u}")
        n = self.num(u)
        return _div(n, d) if n else 0

    def render(self) -> dict:
        return {"num": self.num.render(), "den": self.den.render()}

    @classmethod
    def parse(cls, data: Mapping) -> "RationalFunctionU":
        num = [parse_scalar(c).simplify() for c in data["num"]]
        den = [parse_scalar(c).simplify() for c in data["den"]]
        return cls(UPoly(num), UPoly(den))

    def __repr__(self) -> str:
        return f"RationalFunctionU({self.num.render()}, {self.den.render()})"
