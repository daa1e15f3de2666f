"""Shift-of-argument subalgebras of U(g), Gaudin eigenvalues and Bethe equations."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import g2
from .exact import ParamPolynomial, RationalFunctionU, simplify
from .pbw import (
    G11,
    G22,
    NGEN,
    Engine,
    GeneratorOrder,
    LoopElement,
    decode,
    encode,
)
from .sugawara import Certificate, ProbeResult, TraceBuilder, build_ss_vector
from .walgebra import CartanPolynomial, theorem_b_targets

N = g2.N
CARTAN_MATRIX = ((2, -1), (-3, 2))

# Chevalley coordinates (h1, h2) -> Cartan generators: G11 = 3 h1 + h2, G22 = h2
def g_from_h(pair) -> tuple:
    """``(f(G11), f(G22))`` for a functional given by ``(f(h1), f(h2))``."""
    a, b = pair
    return (simplify(3 * a + b), simplify(b))


def simple_root_h(i: int) -> tuple:
    """``(alpha_i(h1), alpha_i(h2))``; the Cartan matrix rows are ``a_ij = alpha_j(h_i)``."""
    return (CARTAN_MATRIX[0][i - 1], CARTAN_MATRIX[1][i - 1])


def simple_root_g(i: int) -> tuple:
    return g_from_h(simple_root_h(i))


class MuElement:
    """Diagonal ``mu = diag[mu1, mu2, mu3, 0, -mu3, -mu2, -mu1]`` with ``mu1 + mu2 + mu3 = 0``.

    ``mu1 = mu(G11)`` and ``mu2 = mu(G22)``; values may be rationals or
    :class:`ParamPolynomial`.
    """

    __slots__ = ("mu1", "mu2")

    def __init__(self, mu1=0, mu2=0) -> None:
        self.mu1 = simplify(mu1) if not isinstance(mu1, ParamPolynomial) else mu1
        self.mu2 = simplify(mu2) if not isinstance(mu2, ParamPolynomial) else mu2

    @classmethod
    def from_h(cls, pair) -> "MuElement":
        return cls(*g_from_h(pair))

    @classmethod
    def symbolic(cls) -> "MuElement":
        return cls(ParamPolynomial.variable("mu1"), ParamPolynomial.variable("mu2"))

    @property
    def mu3(self):
        return -self.mu1 - self.mu2

    def diagonal(self) -> list:
        m1, m2, m3 = self.mu1, self.mu2, self.mu3
        return [m1, m2, m3, 0, -m3, -m2, -m1]

    def on_generator(self, a: int):
        """``mu`` evaluated on the engine-frame generator with index ``a``."""
        if a == G11:
            return self.mu1
        if a == G22:
            return self.mu2
        return 0

    def is_regular(self) -> bool:
        """No root vanishes: the roots on the diagonal torus are ``+-mu_i`` and ``mu_i - mu_j``."""
        vals = (self.mu1, self.mu2, self.mu3)
        if any(isinstance(v, ParamPolynomial) for v in vals):
            return True
        return all(v != 0 for v in vals) and len(set(vals)) == 3

    def __repr__(self) -> str:
        return f"MuElement({self.mu1}, {self.mu2})"


def finite_engine(level=0) -> Engine:
    """Engine on mode-0 words: the enveloping algebra of g itself."""
    return Engine(GeneratorOrder.VACUUM, level=level)


def evaluation_hom(x: LoopElement, mu: MuElement, z) -> LoopElement:
    """``G[r] -> G z^r + delta_{r,-1} mu`` word by word (result not reordered)."""
    z = Fraction(z)
    if z == 0:
        raise ValueError("evaluation needs a nonzero z")
    out: dict = {}
    for word, c in x.terms.items():
        partial = {(): c}
        for code in word:
            a, r = decode(code)
            if r >= 0:
                raise ValueError("evaluation needs negative modes")
            shift = mu.on_generator(a) if r == -1 else 0
            nxt: dict = {}
            zr = z**r
            g0 = encode(a, 0)
            for w, d in partial.items():
                nw = w + (g0,)
                nxt[nw] = nxt.get(nw, 0) + d * zr
                if shift:
                    nxt[w] = nxt.get(w, 0) + d * shift
            partial = nxt
        for w, d in partial.items():
            out[w] = out.get(w, 0) + d
    return LoopElement(out)


class _ShiftedTraces:
    """Traces of products of ``G`` and ``G + mu z`` in U(g), graded by the power of ``z``."""

    def __init__(self, engine: Engine, mu: MuElement) -> None:
        self.engine = engine
        self.mu = mu.diagonal()
        self.builder = TraceBuilder(engine)
        self._cache: dict = {}

    def _apply(self, shifted: bool, cols: list) -> list:
        ent = self.builder.entries(0)
        act_state = self.engine.act_state
        out = []
        for col in cols:
            newcol = []
            for x in range(N):
                acc: dict = {}
                for y in range(N):
                    for p, st in col[y].items():
                        for code, c in ent[x][y]:
                            tgt = acc.setdefault(p, {})
                            for w, d in act_state(code, st, c).items():
                                tgt[w] = tgt[w] + d if w in tgt else d
                if shifted and self.mu[x]:
                    for p, st in col[x].items():
                        tgt = acc.setdefault(p + 1, {})
                        for w, d in st.items():
                            v = d * self.mu[x]
                            tgt[w] = tgt[w] + v if w in tgt else v
                cleaned = {}
                for p, st in acc.items():
                    st = {w: c for w, c in st.items() if c}
                    if st:
                        cleaned[p] = st
                newcol.append(cleaned)
            out.append(newcol)
        return out

    def columns(self, pattern: tuple) -> list:
        """``pattern`` lists factors left to right: True for ``G + mu z``, False for ``G``."""
        hit = self._cache.get(pattern)
        if hit is not None:
            return hit
        if not pattern:
            cols = [[{0: {(): 1}} if x == a else {} for x in range(N)] for a in range(N)]
        else:
            cols = self._apply(pattern[0], self.columns(pattern[1:]))
        self._cache[pattern] = cols
        return cols

    def trace(self, pattern: tuple) -> dict:
        cols = self.columns(pattern)
        acc: dict = {}
        for a in range(N):
            for p, st in cols[a][a].items():
                tgt = acc.setdefault(p, {})
                for w, d in st.items():
                    tgt[w] = tgt[w] + d if w in tgt else d
        return {p: {w: c for w, c in st.items() if c} for p, st in acc.items()}


A_TERMS = ((1, (True, True)),)
B_TERMS = (
    (1, (True,) * 6),
    (5, (False, True, True, True, True)),
    (14, (False, True, True, True)),
    (31, (False, False, True, True)),
)


@dataclass
class ShiftAlgebra:
    """Coefficients ``A_0..A_2`` and ``B_0..B_6`` as states of the finite engine."""

    mu: MuElement
    engine: Engine
    coefficients: dict = field(default_factory=dict)

    def element(self, name: str) -> LoopElement:
        return self.engine.state_to_element(self.coefficients[name])


def _collect(traces: _ShiftedTraces, terms, top: int, letter: str) -> dict:
    graded: dict = {}
    for coeff, pattern in terms:
        for p, st in traces.trace(pattern).items():
            tgt = graded.setdefault(p, {})
            for w, d in st.items():
                v = d * coeff
                tgt[w] = tgt[w] + v if w in tgt else v
    out = {}
    for k in range(top + 1):
        st = graded.get(top - k, {})
        out[f"{letter}{k}"] = {w: c for w, c in st.items() if c}
    return out


def build_AB(mu: MuElement, engine: Engine | None = None) -> ShiftAlgebra:
    """``A(z) = sum A_k z^(2-k)`` and ``B(z) = sum B_k z^(6-k)``."""
    engine = engine or finite_engine()
    traces = _ShiftedTraces(engine, mu)
    coeffs = _collect(traces, A_TERMS, 2, "A")
    coeffs.update(_collect(traces, B_TERMS, 6, "B"))
    return ShiftAlgebra(mu, engine, coeffs)


def _sub(x: dict, y: dict) -> dict:
    out = dict(x)
    for w, c in y.items():
        out[w] = out[w] - c if w in out else -c
    return {w: c for w, c in out.items() if c}


def commutator_state(engine: Engine, x: dict, y: dict) -> dict:
    """``[x, y]`` for states of the free engine."""
    xe = engine.state_to_element(x)
    ye = engine.state_to_element(y)
    return _sub(engine.apply_element(xe, y), engine.apply_element(ye, x))


def central_residues(engine: Engine, x: dict) -> int:
    """Total term count of ``[G_a, x]`` over all 14 generators."""
    xe = engine.state_to_element(x)
    total = 0
    for a in range(NGEN):
        code = engine._key(encode(a, 0))
        total += len(_sub(engine.act_state(code, x), engine.apply_element(xe, {(code,): 1})))
    return total


SHIFT_GENERATORS = ("A1", "A2", "B1", "B2", "B3", "B4", "B5", "B6")
CENTRAL = ("A2", "B6")
NAMED_B_PAIRS = (("B2", "B3"), ("B2", "B4"), ("B2", "B5"), ("B3", "B4"), ("B3", "B5"))


def verify_theorem_c(mu_samples, pairs: str = "all") -> Certificate:
    """Pairwise commutativity of ``A_1, A_2, B_1..B_6`` at each ``mu`` sample.

    Central elements are certified by commuting with every generator, which
    implies commuting with everything.  ``pairs="b-pairs"`` restricts the
    direct checks to the five B-pairs.
    """
    start = time.perf_counter()
    items = []
    peak = 0
    for sample in mu_samples:
        mu = sample if isinstance(sample, MuElement) else MuElement(*sample)
        label = f"mu=({mu.mu1},{mu.mu2})"
        if not mu.is_regular():
            raise ValueError(f"{label} is not regular")
        engine = finite_engine()
        alg = build_AB(mu, engine)
        c = alg.coefficients
        peak = max(peak, max(len(s) for s in c.values()))
        scalars = [k for k in ("A0", "B0") if any(w for w in c[k])]
        items.append(ProbeResult(f"{label} A0,B0 scalar", len(scalars), not scalars))
        for name in CENTRAL:
            n = central_residues(engine, c[name])
            items.append(ProbeResult(f"{label} {name} central", n, n == 0))
        if pairs == "b-pairs":
            todo = NAMED_B_PAIRS
        else:
            rest = [n for n in SHIFT_GENERATORS if n not in CENTRAL]
            todo = [(x, y) for i, x in enumerate(rest) for y in rest[i + 1 :]]
        for x, y in todo:
            res = commutator_state(engine, c[x], c[y])
            items.append(ProbeResult(f"{label} [{x},{y}]", len(res), not res))
        peak = max(peak, engine.peak_terms)
    return Certificate(
        "shift-commute",
        all(i.ok for i in items),
        items,
        peak,
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Gaudin model


class ConfigError(ValueError):
    """Malformed Gaudin configuration; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str) -> None:
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


def _rational(value, field_name: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ConfigError(field_name, f"expected a rational 'p/q', got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(field_name, f"expected a rational 'p/q', got {value!r}") from None


@dataclass
class GaudinConfig:
    ell: int
    z: list
    lam: list
    bethe: list  # (w, label)
    mu: tuple

    @classmethod
    def from_json(cls, data) -> "GaudinConfig":
        if not isinstance(data, dict):
            raise ConfigError("config", "expected a JSON object")
        for key in ("ell", "z", "lambda"):
            if key not in data:
                raise ConfigError(key, "missing")
        ell = data["ell"]
        if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
            raise ConfigError("ell", "expected a positive integer")
        zs = data["z"]
        if not isinstance(zs, list) or len(zs) != ell:
            raise ConfigError("z", f"expected a list of {ell} rationals")
        z = [_rational(v, f"z[{i}]") for i, v in enumerate(zs)]
        if len(set(z)) != len(z):
            raise ConfigError("z", "points must be distinct")
        lams = data["lambda"]
        if not isinstance(lams, list) or len(lams) != ell:
            raise ConfigError("lambda", f"expected a list of {ell} weight pairs")
        lam = []
        for i, pair in enumerate(lams):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ConfigError(f"lambda[{i}]", "expected a pair [h1, h2]")
            lam.append(tuple(_rational(v, f"lambda[{i}][{k}]") for k, v in enumerate(pair)))
        roots = data.get("bethe", [])
        if not isinstance(roots, list):
            raise ConfigError("bethe", "expected a list")
        bethe = []
        for j, item in enumerate(roots):
            if not isinstance(item, dict) or "w" not in item or "label" not in item:
                raise ConfigError(f"bethe[{j}]", "expected {\"w\": ..., \"label\": 1|2}")
            w = _rational(item["w"], f"bethe[{j}].w")
            label = item["label"]
            if label not in (1, 2) or isinstance(label, bool):
                raise ConfigError(f"bethe[{j}].label", "expected 1 or 2")
            if w in z:
                raise ConfigError(f"bethe[{j}].w", "coincides with a point z")
            if any(w == b[0] for b in bethe):
                raise ConfigError(f"bethe[{j}].w", "Bethe roots must be distinct")
            bethe.append((w, label))
        mus = data.get("mu", ["0", "0"])
        if not isinstance(mus, list) or len(mus) != 2:
            raise ConfigError("mu", "expected a pair [h1, h2]")
        mu = tuple(_rational(v, f"mu[{k}]") for k, v in enumerate(mus))
        return cls(ell, z, lam, bethe, mu)


def gamma_functions(cfg: GaudinConfig) -> tuple[RationalFunctionU, RationalFunctionU]:
    mu_g = g_from_h(cfg.mu)
    out = []
    for idx in range(2):
        gam = RationalFunctionU.constant(-mu_g[idx])
        for z, lam in zip(cfg.z, cfg.lam):
            c = g_from_h(lam)[idx]
            if c:
                gam = gam + RationalFunctionU.simple_pole(c, z)
        for w, label in cfg.bethe:
            c = simple_root_g(label)[idx]
            if c:
                gam = gam - RationalFunctionU.simple_pole(c, w)
        out.append(gam)
    return out[0], out[1]


def rho_values(cfg: GaudinConfig, depth: int) -> dict:
    """``g_i[-r-1] -> (d_u^r / r!) Gamma_i(u) / 3``."""
    gammas = gamma_functions(cfg)
    values = {}
    for i in (1, 2):
        for r in range(depth):
            values[(i, -r - 1)] = gammas[i - 1].scaled_derivative(r) * Fraction(1, 3)
    return values


def rho(x: CartanPolynomial, cfg: GaudinConfig) -> RationalFunctionU:
    out = x.evaluate(rho_values(cfg, max(x.depth(), 1)))
    return out if isinstance(out, RationalFunctionU) else RationalFunctionU.constant(out)


def eigenvalue(tag: str, cfg: GaudinConfig) -> RationalFunctionU:
    """``rho(phi(S_tag))`` using the printed image of ``S_tag``."""
    return rho(theorem_b_targets()[tag], cfg)


def bethe_residuals(cfg: GaudinConfig) -> list[Fraction]:
    out = []
    for j, (wj, ij) in enumerate(cfg.bethe):
        total = Fraction(0)
        for zi, lam in zip(cfg.z, cfg.lam):
            total += Fraction(lam[ij - 1]) / (wj - zi)
        for s, (ws, is_) in enumerate(cfg.bethe):
            if s != j:
                total -= Fraction(simple_root_h(is_)[ij - 1]) / (wj - ws)
        total -= Fraction(cfg.mu[ij - 1])
        out.append(total)
    return out


def sigma(x: LoopElement) -> LoopElement:
    """The anti-automorphism ``G[r] -> -G[r]``: words reversed, sign ``(-1)^length``."""
    return LoopElement({tuple(reversed(w)): (-c if len(w) % 2 else c) for w, c in x.terms.items()})


def verma_engine(lam_g) -> Engine:
    hw = {G11: lam_g[0], G22: lam_g[1]}
    return Engine(GeneratorOrder.VERMA, level=0, highest_weight=hw)


def operator_eigenvalue(tag: str, lam_h) -> tuple[Fraction, int]:
    """Scalar ``C`` with ``Phi(S_tag) 1_lam = C (z - u)^(-a) 1_lam`` for one site and ``mu = 0``.

    Returns ``(C, a)``; every word of ``S_tag`` has total mode ``-a``.
    """
    s = sigma(build_ss_vector(tag).value)
    engine = verma_engine(g_from_h(lam_h))
    total = Fraction(0)
    depth = None
    for word, c in s.terms.items():
        modes = [decode(code)[1] for code in word]
        if depth is None:
            depth = -sum(modes)
        elif depth != -sum(modes):
            raise ArithmeticError("inhomogeneous vector")
        zero = tuple(encode(decode(code)[0], 0) for code in word)
        res = engine.apply_word(zero, {(): 1}, c)
        for w, d in res.items():
            if w:
                raise ArithmeticError("operator did not act by a scalar on the highest-weight vector")
            total += d
    return total, depth or 0


def verify_gaudin_l1(tag: str, lam_h, u_samples=(2, 3, 5, 7, 11), z=0) -> Certificate:
    start = time.perf_counter()
    z = Fraction(z)
    cfg = GaudinConfig(1, [z], [tuple(Fraction(v) for v in lam_h)], [], (Fraction(0), Fraction(0)))
    rational = eigenvalue(tag, cfg)
    c, a = operator_eigenvalue(tag, lam_h)
    items = []
    for u in u_samples:
        u = Fraction(u)
        lhs = c * (z - u) ** (-a)
        rhs = rational(u)
        items.append(ProbeResult(f"u={u}: {lhs} vs {rhs}", 0 if lhs == rhs else 1, lhs == rhs))
    return Certificate(
        f"gaudin-l1 {tag}",
        all(i.ok for i in items),
        items,
        0,
        time.perf_counter() - start,
        extra={"operator_constant": c, "degree": a, "eigenvalue": rational},
    )

