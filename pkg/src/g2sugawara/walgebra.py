"""Classical W-algebra of type G2: Miura expansion, screenings, Harish-Chandra images."""
from __future__ import annotations

import random
import time
from fractions import Fraction
from math import comb

from .exact import simplify
from .pbw import G11, Engine, GeneratorOrder, Ideal, LoopElement, decode, is_cartan_word
from .sugawara import CRITICAL_LEVEL, SS_DEFINITIONS, Certificate, ProbeResult, TraceBuilder

Var = tuple  # (i, r): the variable g_i[r], i in {1, 2}, r < 0


def _check_var(v: Var) -> Var:
    i, r = v
    if i not in (1, 2) or r >= 0:
        raise ValueError(f"not a Cartan loop variable: g{i}[{r}]")
    return (i, r)


class CartanPolynomial:
    """Commutative polynomial in ``g_1[r], g_2[r]`` (``r < 0``) with exact coefficients.

    Monomials are sorted tuples of variables ``(i, r)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None) -> None:
        self.terms: dict = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = tuple(sorted(m))
                    self.terms[m] = self.terms.get(m, 0) + c
            self.terms = {m: simplify(c) for m, c in self.terms.items() if c}

    @classmethod
    def constant(cls, c) -> "CartanPolynomial":
        return cls({(): c})

    @classmethod
    def var(cls, i: int, r: int, coeff=1) -> "CartanPolynomial":
        return cls({(_check_var((i, r)),): coeff})

    @classmethod
    def coerce(cls, x) -> "CartanPolynomial":
        return x if isinstance(x, CartanPolynomial) else cls.constant(x)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "CartanPolynomial":
        other = CartanPolynomial.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CartanPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "CartanPolynomial":
        return CartanPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "CartanPolynomial":
        return self + (-CartanPolynomial.coerce(other))

    def __rsub__(self, other) -> "CartanPolynomial":
        return CartanPolynomial.coerce(other) - self

    def __mul__(self, other) -> "CartanPolynomial":
        if not isinstance(other, CartanPolynomial):
            return CartanPolynomial({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return CartanPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CartanPolynomial":
        out = CartanPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def variables(self) -> set:
        return {v for m in self.terms for v in m}

    def depth(self) -> int:
        """Largest ``-r`` among the variables present (0 for constants)."""
        return max((-r for _, r in self.variables()), default=0)

    def partial(self, v: Var) -> "CartanPolynomial":
        out: dict = {}
        for m, c in self.terms.items():
            k = m.count(v)
            if k:
                i = m.index(v)
                nm = m[:i] + m[i + 1 :]
                out[nm] = out.get(nm, 0) + c * k
        return CartanPolynomial(out)

    def conformal_degrees(self) -> set:
        """Set of ``sum(-r)`` over monomials."""
        return {sum(-r for _, r in m) for m in self.terms}

    def evaluate(self, values: dict):
        """Substitute ``values[(i, r)]`` (any ring supporting ``+``, ``*``)."""
        total = None
        for m, c in sorted(self.terms.items()):
            term = c
            for v in m:
                term = values[v] * term
            total = term if total is None else total + term
        return 0 if total is None else total

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0])):
            factors = []
            prev, k = None, 0
            for v in list(m) + [None]:
                if v == prev:
                    k += 1
                    continue
                if prev is not None:
                    name = f"g{prev[0]}[{prev[1]}]"
                    factors.append(name if k == 1 else f"{name}^{k}")
                prev, k = v, 1
            cs = str(Fraction(c)) if not hasattr(c, "render") else c.render()
            parts.append(f"({cs})" + "".join("*" + f for f in factors))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            {"monomial": [f"g{i}[{r}]" for i, r in m], "coeff": str(Fraction(c))}
            for m, c in sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))
        ]

    def __repr__(self) -> str:
        return f"CartanPolynomial({self.render()})"


def g(i: int, r: int) -> CartanPolynomial:
    return CartanPolynomial.var(i, r)


def translation_d(x: CartanPolynomial, k: int = 1) -> CartanPolynomial:
    """The derivation ``g_i[r] -> -r g_i[r-1]``, applied ``k`` times."""
    for _ in range(k):
        out: dict = {}
        for m, c in x.terms.items():
            for idx, (i, r) in enumerate(m):
                nm = m[:idx] + ((i, r - 1),) + m[idx + 1 :]
                nm = tuple(sorted(nm))
                out[nm] = out.get(nm, 0) + c * (-r)
        x = CartanPolynomial(out)
    return x


# ---------------------------------------------------------------------------
# Harish-Chandra images


def from_hc(x: LoopElement) -> CartanPolynomial:
    """``G11[r] -> 3 g1[r]``, ``G22[r] -> 3 g2[r]`` on a pure-Cartan element."""
    out: dict = {}
    for w, c in x.terms.items():
        if not is_cartan_word(w):
            raise ValueError("from_hc needs a pure-Cartan element")
        m = []
        for code in w:
            a, r = decode(code)
            if r >= 0:
                raise ValueError("from_hc needs negative modes")
            m.append((1 if a == G11 else 2, r))
        m = tuple(sorted(m))
        out[m] = out.get(m, 0) + c * 3 ** len(w)
    return CartanPolynomial(out)


def hc_engine() -> Engine:
    return Engine(GeneratorOrder.HC, Ideal.N_MINUS_NEG, level=CRITICAL_LEVEL)


_HC_CACHE: dict = {}


def hc_image(tag: str) -> CartanPolynomial:
    """``phi(S_tag)`` computed in the quotient by the left ideal of negative lowering modes."""
    if tag not in _HC_CACHE:
        engine = hc_engine()
        state = TraceBuilder(engine).combination(SS_DEFINITIONS[tag])
        element = engine.state_to_element(state)
        _HC_CACHE[tag] = from_hc(element)
    return _HC_CACHE[tag]


# ---------------------------------------------------------------------------
# Miura transformation

#: linear terms (c1, c2) of the factors ``tau + c1 g1[-1] + c2 g2[-1]``, left to right
MIURA_FACTORS = ((-2, -1), (-1, -2), (-1, 1), (0, 0), (1, -1), (1, 2), (2, 1))


class MiuraOperator:
    """``sum c_k tau^k`` with Cartan coefficients written to the left of ``tau``."""

    def __init__(self, coeffs: dict[int, CartanPolynomial]) -> None:
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def order(self) -> int:
        return max(self.coeffs, default=0)

    def coefficient(self, k: int) -> CartanPolynomial:
        return self.coeffs.get(k, CartanPolynomial())

    def times_factor(self, lin: CartanPolynomial) -> "MiuraOperator":
        """Right multiplication by ``tau + lin``, using ``tau^k L = sum binom(k,j) D^j(L) tau^(k-j)``."""
        out: dict[int, CartanPolynomial] = {}

        def add(k, p):
            out[k] = out[k] + p if k in out else p

        for k, a in self.coeffs.items():
            add(k + 1, a)
            for j in range(k + 1):
                if lin:
                    add(k - j, a * translation_d(lin, j) * comb(k, j))
        return MiuraOperator(out)


def miura_operator() -> MiuraOperator:
    op = MiuraOperator({0: CartanPolynomial.constant(1)})
    for c1, c2 in MIURA_FACTORS:
        op = op.times_factor(g(1, -1) * c1 + g(2, -1) * c2)
    return op


_W_CACHE: dict = {}


def miura_expand() -> dict[int, CartanPolynomial]:
    """``{k: w_k}`` for k = 2..7 from ``tau^7 + w_2 tau^5 + ... + w_7``."""
    if not _W_CACHE:
        op = miura_operator()
        if op.coefficient(7) != CartanPolynomial.constant(1) or op.coefficient(6):
            raise ArithmeticError("unexpected leading Miura coefficients")
        for k in range(2, 8):
            _W_CACHE[k] = op.coefficient(7 - k)
    return dict(_W_CACHE)


def w2_printed() -> CartanPolynomial:
    """The closed formula for ``w_2``."""
    g11, g21, g12, g22 = g(1, -1), g(2, -1), g(1, -2), g(2, -2)
    return (g11 * g11 + g11 * g21 + g21 * g21 - g12 * 3 - g22 * 2) * (-6)


def w_relations() -> dict[str, CartanPolynomial]:
    """Residues of ``2w3 = 5w2'``, ``4w4 = w2^2 + 12w2''``, ``4w5 = 3w2w2' + 8w2'''``."""
    w = miura_expand()
    d = lambda k: translation_d(w[2], k)  # noqa: E731
    return {
        "w2 - printed": w[2] - w2_printed(),
        "2w3 - 5w2'": w[3] * 2 - d(1) * 5,
        "4w4 - w2^2 - 12w2''": w[4] * 4 - w[2] * w[2] - d(2) * 12,
        "4w5 - 3w2w2' - 8w2'''": w[5] * 4 - w[2] * d(1) * 3 - d(3) * 8,
    }


def theorem_b_targets() -> dict[str, CartanPolynomial]:
    """The printed images of ``S_2 .. S_6`` in terms of ``w_2``, ``w_6`` and derivatives."""
    w = miura_expand()
    w2 = w[2]
    d = lambda k: translation_d(w2, k)  # noqa: E731
    h = Fraction(1, 2)
    return {
        "S2": w2 * -6,
        "S3": d(1) * 18,
        "S4": w2 * w2 * 9 - d(2) * 36,
        "S5": w2 * d(1) * -63 + d(3) * 72,
        "S6": w[6] * 162
        - w2 * w2 * w2 * (33 * h)
        + d(1) * d(1) * (63 * h)
        + w2 * d(2) * 90
        - d(4) * 576,
    }


def verify_theorem_b(tags=("S2", "S3", "S4", "S5", "S6")) -> Certificate:
    start = time.perf_counter()
    targets = theorem_b_targets()
    items = []
    peak = 0
    for tag in tags:
        image = hc_image(tag)
        peak = max(peak, len(image))
        diff = image - targets[tag]
        items.append(ProbeResult(f"phi({tag}) - printed", len(diff), not diff))
    return Certificate("hc-image", all(i.ok for i in items), items, peak, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Screening operators

#: direction (d/dg1, d/dg2) coefficients and series exponents (coefficients of g1[-m], g2[-m])
SCREENINGS = {
    1: {"direction": (1, -1), "series": (1, -1)},
    2: {"direction": (1, -2), "series": (0, 3)},
}


def screening_coefficients(i: int, depth: int) -> list[CartanPolynomial]:
    """``V_{i,0} .. V_{i,depth-1}`` from ``sum V_ir z^r = exp(sum p_m z^m / m)``."""
    a, b = SCREENINGS[i]["series"]
    p = [None] + [g(1, -m) * a + g(2, -m) * b for m in range(1, depth + 1)]
    v = [CartanPolynomial.constant(1)]
    for r in range(1, depth):
        acc = CartanPolynomial()
        for m in range(1, r + 1):
            acc = acc + p[m] * v[r - m]
        v.append(acc * Fraction(1, r))
    return v


def screening_apply(i: int, x: CartanPolynomial) -> CartanPolynomial:
    if i not in SCREENINGS:
        raise ValueError(f"screening index must be 1 or 2, got {i}")
    x = CartanPolynomial.coerce(x)
    depth = x.depth()
    if depth == 0:
        return CartanPolynomial()
    c1, c2 = SCREENINGS[i]["direction"]
    coeffs = screening_coefficients(i, depth)
    out = CartanPolynomial()
    for r in range(depth):
        deriv = x.partial((1, -r - 1)) * c1 + x.partial((2, -r - 1)) * c2
        if deriv:
            out = out + coeffs[r] * deriv
    return out


def intertwining_factor(i: int) -> CartanPolynomial:
    return g(1, -1) - g(2, -1) if i == 1 else g(2, -1) * 3


def intertwining_residue(i: int, x: CartanPolynomial) -> CartanPolynomial:
    """``V_i(Dx) - D(V_i x) - factor * V_i x``."""
    vx = screening_apply(i, x)
    return screening_apply(i, translation_d(x)) - translation_d(vx) - intertwining_factor(i) * vx


def random_cartan_polynomial(rng: random.Random, terms: int = 6, degree: int = 3, depth: int = 3):
    out = CartanPolynomial()
    for _ in range(terms):
        m = {}
        for _ in range(rng.randint(1, degree)):
            v = (rng.randint(1, 2), -rng.randint(1, depth))
            m[v] = m.get(v, 0) + 1
        mono = CartanPolynomial.constant(rng.randint(-5, 5))
        for (ii, r), k in m.items():
            mono = mono * g(ii, r) ** k
        out = out + mono
    return out


def screening_targets(include_images: bool = True) -> dict[str, CartanPolynomial]:
    w = miura_expand()
    out = {f"w{k}": w[k] for k in range(2, 8)}
    if include_images:
        for tag in SS_DEFINITIONS:
            out[f"phi({tag})"] = hc_image(tag)
    return out


def verify_screening_kernel(targets: dict[str, CartanPolynomial] | None = None) -> Certificate:
    start = time.perf_counter()
    targets = screening_targets() if targets is None else targets
    items = []
    for name, x in targets.items():
        for i in (1, 2):
            res = screening_apply(i, x)
            items.append(ProbeResult(f"V{i}({name})", len(res), not res))
    return Certificate("screenings", all(i.ok for i in items), items, 0, time.perf_counter() - start)


def homogeneity() -> dict[int, set]:
    """Conformal degrees present in each ``w_k``."""
    return {k: w.conformal_degrees() for k, w in miura_expand().items()}


__all__ = [
    "CartanPolynomial",
    "MIURA_FACTORS",
    "MiuraOperator",
    "from_hc",
    "g",
    "hc_image",
    "homogeneity",
    "intertwining_residue",
    "miura_expand",
    "miura_operator",
    "screening_apply",
    "screening_targets",
    "theorem_b_targets",
    "translation_d",
    "verify_screening_kernel",
    "verify_theorem_b",
    "w2_printed",
    "w_relations",
]
