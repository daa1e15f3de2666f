"""PBW normal ordering in the enveloping algebra of the loop algebra of G2.

Words are tuples of integer generator codes.  A code packs the loop mode and
the generator index so that plain integer comparison realises the
mode-ascending (vacuum) order::

    code = (mode + MODE_OFFSET) * 16 + a

Internally the rewriting works in the rescaled frame ``E_a = G_a / s_a`` of
:func:`g2sugawara.g2.frame_scales`, where every structure constant is
rational; :func:`loop_gen` and :meth:`LoopElement.g_terms` translate to and
from the ``G_ij`` generators.

The core routine is :meth:`Engine.act`, the left action of one generator on a
normal-ordered word, memoised on ``(generator, word)``.  The same routine
computes normal forms in the full enveloping algebra and in the quotients by
the left ideals used for the vacuum module, the Harish-Chandra projection and
Verma modules, depending on which generators annihilate the cyclic vector.
"""
from __future__ import annotations

import enum
import random
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import g2
from .exact import ExactScalar, ParamPolynomial, render_scalar, simplify

MODE_OFFSET = 64
MODE_MIN = -MODE_OFFSET
MODE_MAX = MODE_OFFSET - 1

NGEN = g2.NGEN
CARTAN = tuple(a for a in range(NGEN) if g2.generator_role(a) == g2.ROLE_CARTAN)
RAISING = tuple(a for a in range(NGEN) if g2.generator_role(a) == g2.ROLE_RAISING)
LOWERING = tuple(a for a in range(NGEN) if g2.generator_role(a) == g2.ROLE_LOWERING)
G11 = g2.GEN_INDEX[(1, 1)]
G22 = g2.GEN_INDEX[(2, 2)]


class ModeOverflow(OverflowError):
    pass


def encode(a: int, mode: int) -> int:
    if not MODE_MIN <= mode <= MODE_MAX:
        raise ModeOverflow(f"loop mode {mode} outside [{MODE_MIN}, {MODE_MAX}]")
    return ((mode + MODE_OFFSET) << 4) | a


def gen_index(code: int) -> int:
    return code & 15


def gen_mode(code: int) -> int:
    return (code >> 4) - MODE_OFFSET


def decode(code: int) -> tuple[int, int]:
    return code & 15, (code >> 4) - MODE_OFFSET


def format_gen(code: int) -> str:
    a, r = decode(code)
    i, j = g2.GENERATORS[a]
    return f"G({i},{j})[{r}]"


class GeneratorOrder(enum.Enum):
    """Total orders on loop generators.

    ``VACUUM`` sorts by mode, then generator index.  ``HC`` puts raising
    generators first, then Cartan, then lowering, each block sorted by mode
    and index.  ``VERMA`` is the reverse block order (lowering, Cartan,
    raising) used to act on highest-weight vectors.
    """

    VACUUM = "vacuum"
    HC = "hc"
    VERMA = "verma"


class Ideal(enum.Enum):
    """Left ideals whose quotients the engine can compute in."""

    #: generated by the loop generators of nonnegative mode (vacuum module)
    G_POLY_T = "g[t]"
    #: generated by the lowering generators at negative modes
    N_MINUS_NEG = "t^-1 n_-[t^-1]"


_MATCHING_ORDER = {Ideal.G_POLY_T: GeneratorOrder.VACUUM, Ideal.N_MINUS_NEG: GeneratorOrder.HC}

_BLOCK_RANK = {
    GeneratorOrder.HC: {g2.ROLE_RAISING: 0, g2.ROLE_CARTAN: 1, g2.ROLE_LOWERING: 2},
    GeneratorOrder.VERMA: {g2.ROLE_LOWERING: 0, g2.ROLE_CARTAN: 1, g2.ROLE_RAISING: 2},
}
_BLOCK_SHIFT = 1 << 12


def sort_key(order: GeneratorOrder) -> Callable[[int], int]:
    """Integer key realising ``order`` on canonical generator codes."""
    if order is GeneratorOrder.VACUUM:
        return lambda code: code
    rank = _BLOCK_RANK[order]
    ranks = [rank[g2.generator_role(a)] * _BLOCK_SHIFT for a in range(NGEN)]
    return lambda code: ranks[code & 15] + code


def is_normal_ordered(word: tuple, order: GeneratorOrder) -> bool:
    key = sort_key(order)
    return all(key(x) <= key(y) for x, y in zip(word, word[1:]))


# ---------------------------------------------------------------------------
# Elements


def _clean(terms: Mapping) -> dict:
    return {w: c for w, c in terms.items() if c}


class LoopElement:
    """Sparse linear combination of words in loop generators.

    Coefficients are ``int``, ``Fraction``, :class:`ExactScalar` or
    :class:`ParamPolynomial`; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None) -> None:
        self.terms = _clean(terms) if terms else {}

    @classmethod
    def one(cls, coeff=1) -> "LoopElement":
        return cls({(): coeff})

    @classmethod
    def generator(cls, a: int, mode: int, coeff=1) -> "LoopElement":
        return cls({(encode(a, mode),): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopElement):
            return NotImplemented
        return (self - other).terms == {}

    def __add__(self, other: "LoopElement") -> "LoopElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return LoopElement(out)

    def __neg__(self) -> "LoopElement":
        return LoopElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "LoopElement") -> "LoopElement":
        return self + (-other)

    def scale(self, c) -> "LoopElement":
        c = simplify(c)
        if not c:
            return LoopElement()
        return LoopElement({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LoopElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def homogeneous_part(self, degree: int) -> "LoopElement":
        return LoopElement({w: c for w, c in self.terms.items() if len(w) == degree})

    def modes(self) -> set[int]:
        return {gen_mode(x) for w in self.terms for x in w}

    def map_coefficients(self, fn) -> "LoopElement":
        return LoopElement({w: fn(c) for w, c in self.terms.items()})

    def specialize(self, **values) -> "LoopElement":
        """Substitute values for parameters in :class:`ParamPolynomial` coefficients."""

        def sub(c):
            return c.substitute(**values) if isinstance(c, ParamPolynomial) else c

        return self.map_coefficients(sub)

    def g_terms(self) -> dict:
        """Terms re-expressed in the ``G_ij`` generators (coefficients in Q(sqrt 2))."""
        scales = g2.frame_scales()
        out = {}
        for w, c in self.terms.items():
            factor = ExactScalar(1)
            for x in w:
                factor = factor * scales[x & 15]
            inv = factor.inverse()
            out[w] = c * inv.simplify() if isinstance(c, ParamPolynomial) else simplify(ExactScalar.coerce(c) * inv)
        return out

    def dump(self) -> str:
        """One ``coeff * G(i,j)[r] ...`` line per word, in deterministic order."""
        lines = []
        for w, c in sorted(self.g_terms().items(), key=lambda t: (len(t[0]), t[0])):
            coeff = c.render() if isinstance(c, ParamPolynomial) else render_scalar(c)
            word = " ".join(format_gen(x) for x in w) if w else "1"
            lines.append(f"{coeff} * {word}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"LoopElement({len(self.terms)} terms, degree {self.degree()})"


def loop_gen(i: int, j: int, mode: int) -> LoopElement:
    """The generator ``G_ij[mode]`` (``i, j`` in 1..4) as an element."""
    a = g2.GEN_INDEX[(i, j)]
    return LoopElement.generator(a, mode, g2.frame_scales()[a].simplify())


def from_coordinates(coords: Mapping[int, object], mode: int) -> LoopElement:
    """Linear element ``sum coeff * G_a[mode]`` from ``G``-frame coordinates."""
    scales = g2.frame_scales()
    terms = {}
    for a, c in coords.items():
        v = simplify(ExactScalar.coerce(c) * scales[a]) if not isinstance(c, ParamPolynomial) else c * scales[a]
        if v:
            terms[(encode(a, mode),)] = v
    return LoopElement(terms)


def multiply(x: LoopElement, y: LoopElement) -> LoopElement:
    """Free product: concatenate words, multiply coefficients."""
    out: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            w = w1 + w2
            c = c1 * c2
            out[w] = out[w] + c if w in out else c
    return LoopElement(out)


# ---------------------------------------------------------------------------
# Brackets


def bracket_loop(x: int, y: int, level=None) -> LoopElement:
    """``[X[r], Y[s]] = [X, Y][r+s] + r delta_{r,-s} <X, Y> K`` for generator codes.

    ``level`` is the value of the central element; ``None`` keeps ``K`` symbolic.
    """
    brackets, gram = g2.rational_structure()
    a, r = decode(x)
    b, s = decode(y)
    terms: dict = {}
    for k, c in brackets[a][b]:
        terms[(encode(k, r + s),)] = c
    if r and r == -s and gram[a][b]:
        k = ParamPolynomial.variable("K") if level is None else level
        terms[()] = simplify(k * (r * gram[a][b]))
    return LoopElement(terms)


# ---------------------------------------------------------------------------
# The rewriting engine


class Engine:
    """Left action of generators on normal-ordered words.

    ``order``: the generator order; ``ideal``: optional left ideal whose
    quotient is computed (words are reduced as they are produced);
    ``level``: value substituted for ``K`` (``None`` keeps it symbolic);
    ``highest_weight``: for the ``VERMA`` order, the values of the Cartan
    generators on the cyclic vector, keyed by generator index.
    """

    def __init__(
        self,
        order: GeneratorOrder = GeneratorOrder.VACUUM,
        ideal: Ideal | None = None,
        level=None,
        highest_weight: Mapping[int, object] | None = None,
    ) -> None:
        if ideal is not None and _MATCHING_ORDER[ideal] is not order:
            raise ValueError(f"ideal {ideal.value} requires the {_MATCHING_ORDER[ideal].name} order")
        if highest_weight is not None and order is not GeneratorOrder.VERMA:
            raise ValueError("highest-weight quotients require the VERMA order")
        self.order = order
        self.ideal = ideal
        self.level = ParamPolynomial.variable("K") if level is None else level
        self.highest_weight = dict(highest_weight) if highest_weight is not None else None
        self._memo: dict = {}
        self._brackets: dict = {}
        self._key = sort_key(order)
        self._internal = order is not GeneratorOrder.VACUUM
        self.peak_terms = 0
        brackets, gram = g2.rational_structure()
        self._table = brackets
        self._gram = gram

    # internal codes: plain ints whose order matches ``self.order``
    def _to_internal(self, code: int) -> int:
        return self._key(code)

    @staticmethod
    def _from_internal(code: int) -> int:
        return code & (_BLOCK_SHIFT - 1)

    def _word_in(self, word: tuple) -> tuple:
        if not self._internal:
            return word
        key = self._key
        return tuple(key(x) for x in word)

    def _word_out(self, word: tuple) -> tuple:
        if not self._internal:
            return word
        mask = _BLOCK_SHIFT - 1
        return tuple(x & mask for x in word)

    def _bracket(self, g: int, y: int):
        """Bracket of internal codes: (tuple of (internal code, coeff), central scalar)."""
        key = (g, y)
        hit = self._brackets.get(key)
        if hit is not None:
            return hit
        mask = _BLOCK_SHIFT - 1
        a, r = decode(g & mask)
        b, s = decode(y & mask)
        terms = tuple((self._key(encode(k, r + s)), c) for k, c in self._table[a][b])
        central = 0
        if r and r == -s and self._gram[a][b]:
            central = simplify(self.level * (r * self._gram[a][b]))
        hit = (terms, central)
        self._brackets[key] = hit
        return hit

    def _on_cyclic(self, g: int) -> dict:
        """Action of a single generator on the cyclic vector (empty word)."""
        code = g & (_BLOCK_SHIFT - 1)
        a, r = decode(code)
        ideal = self.ideal
        if ideal is Ideal.G_POLY_T and r >= 0:
            return {}
        role = g2.generator_role(a)
        if ideal is Ideal.N_MINUS_NEG and role == g2.ROLE_LOWERING:
            return {}
        if self.highest_weight is not None:
            if role == g2.ROLE_RAISING:
                return {}
            if role == g2.ROLE_CARTAN:
                lam = self.highest_weight.get(a, 0) if r == 0 else 0
                if r != 0:
                    raise ValueError("highest-weight quotients are only defined for mode-0 words")
                return {(): lam} if lam else {}
        return {(g,): 1}

    def act(self, g: int, v: tuple) -> dict:
        """``g * v`` in normal form; ``g`` and ``v`` in internal codes."""
        key = (g, v)
        memo = self._memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not v:
            out = self._on_cyclic(g)
        elif g <= v[0]:
            out = {(g,) + v: 1}
        else:
            y = v[0]
            rest = v[1:]
            out = {}
            act = self.act
            # g y rest = y (g rest) + [g, y] rest
            for u, c in act(g, rest).items():
                if u and y <= u[0]:
                    w = (y,) + u
                    out[w] = out[w] + c if w in out else c
                else:
                    for w, d in act(y, u).items():
                        out[w] = out[w] + c * d if w in out else c * d
            terms, central = self._bracket(g, y)
            for z, c in terms:
                for w, d in act(z, rest).items():
                    out[w] = out[w] + c * d if w in out else c * d
            if central:
                out[rest] = out[rest] + central if rest in out else central
            out = {w: c for w, c in out.items() if c}
        memo[key] = out
        return out

    def act_state(self, g: int, state: Mapping, coeff=1) -> dict:
        """``coeff * g * state`` for a state in internal codes."""
        out: dict = {}
        act = self.act
        for v, c in state.items():
            cc = c * coeff
            for w, d in act(g, v).items():
                out[w] = out[w] + cc * d if w in out else cc * d
        return {w: c for w, c in out.items() if c}

    def apply_word(self, word: tuple, state: Mapping, coeff=1) -> dict:
        """``coeff * word * state``; ``word`` in canonical codes, state internal."""
        cur = dict(state)
        for x in reversed(self._word_in(word)):
            cur = self.act_state(x, cur)
            if not cur:
                return {}
        if coeff != 1:
            cur = {w: c * coeff for w, c in cur.items() if c * coeff}
        return cur

    def apply_element(self, x: LoopElement, state: Mapping | None = None) -> dict:
        """``x * state`` (state defaults to the cyclic vector), internal codes."""
        if state is None:
            state = {(): 1}
        out: dict = {}
        for word, c in x.terms.items():
            for w, d in self.apply_word(word, state, c).items():
                out[w] = out[w] + d if w in out else d
        out = {w: c for w, c in out.items() if c}
        self.peak_terms = max(self.peak_terms, len(out))
        return out

    def state_to_element(self, state: Mapping) -> LoopElement:
        return LoopElement({self._word_out(w): c for w, c in state.items()})

    def element_to_state(self, x: LoopElement) -> dict:
        return {self._word_in(w): c for w, c in x.terms.items()}

    def normal_form(self, x: LoopElement) -> LoopElement:
        return self.state_to_element(self.apply_element(x))

    def memo_size(self) -> int:
        return len(self._memo)

    def clear(self) -> None:
        self._memo.clear()


def normal_order(x: LoopElement, order: GeneratorOrder = GeneratorOrder.VACUUM, level=None) -> LoopElement:
    """Normal form of ``x`` in the enveloping algebra of the affine algebra."""
    return Engine(order, level=level).normal_form(x)


def reduce_mod_left_ideal(x: LoopElement, ideal: Ideal, order: GeneratorOrder) -> LoopElement:
    """Drop words lying in ``ideal``; ``x`` must be normal-ordered under ``order``."""
    if _MATCHING_ORDER[ideal] is not order:
        raise ValueError(f"ideal {ideal.value} requires the {_MATCHING_ORDER[ideal].name} order, got {order.name}")
    out = {}
    for w, c in x.terms.items():
        if not is_normal_ordered(w, order):
            raise ValueError("element is not normal-ordered")
        if w:
            a, r = decode(w[-1])
            if ideal is Ideal.G_POLY_T and r >= 0:
                continue
            if ideal is Ideal.N_MINUS_NEG and a in LOWERING:
                continue
        out[w] = c
    return LoopElement(out)


def rewrite_normal_order(
    x: LoopElement,
    order: GeneratorOrder = GeneratorOrder.VACUUM,
    level=None,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
) -> LoopElement:
    """Straightforward rewriting ``ba -> ab + [b, a]`` on adjacent inversions.

    Independent of :class:`Engine`; ``strategy`` picks which inversion to fix
    first (``leftmost``, ``rightmost`` or ``random``).
    """
    key = sort_key(order)
    rng = rng or random.Random(0)
    pending = dict(x.terms)
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        inversions = [i for i in range(len(w) - 1) if key(w[i]) > key(w[i + 1])]
        if not inversions:
            done[w] = done[w] + c if w in done else c
            continue
        if strategy == "leftmost":
            i = inversions[0]
        elif strategy == "rightmost":
            i = inversions[-1]
        elif strategy == "random":
            i = rng.choice(inversions)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        b, a = w[i], w[i + 1]
        swapped = w[:i] + (a, b) + w[i + 2 :]
        pending[swapped] = pending[swapped] + c if swapped in pending else c
        for bw, bc in bracket_loop(b, a, level).terms.items():
            nw = w[:i] + bw + w[i + 2 :]
            v = c * bc
            pending[nw] = pending[nw] + v if nw in pending else v
    return LoopElement(done)


def apply_translation(x: LoopElement) -> LoopElement:
    """The derivation ``D: X[r] -> -r X[r-1]`` extended by the Leibniz rule."""
    out: dict = {}
    for w, c in x.terms.items():
        for i, code in enumerate(w):
            a, r = decode(code)
            if r >= 0:
                raise ValueError("translation requires negative modes")
            nw = w[:i] + (encode(a, r - 1),) + w[i + 1 :]
            v = c * (-r)
            out[nw] = out[nw] + v if nw in out else v
    return LoopElement(out)


def weight(x: LoopElement):
    """Common ``(ad G11, ad G22)`` weight of all words, ``(0, 0)`` for zero, ``None`` if mixed."""
    weights = g2.build_basis().weights
    found = None
    for w in x.terms:
        wt = [0, 0]
        for code in w:
            p, q = weights[code & 15]
            wt[0] += p
            wt[1] += q
        wt = (simplify(Fraction(wt[0])), simplify(Fraction(wt[1])))
        if found is None:
            found = wt
        elif wt != found:
            return None
    return found if found is not None else (0, 0)


def is_cartan_word(word: Iterable[int]) -> bool:
    return all((x & 15) in CARTAN for x in word)


def hc_project(x: LoopElement, engine: Engine | None = None) -> LoopElement:
    """Harish-Chandra projection of a weight-zero element with negative modes."""
    if weight(x) != (0, 0):
        raise ValueError("Harish-Chandra projection needs a weight-zero element")
    if any(r >= 0 for r in x.modes()):
        raise ValueError("Harish-Chandra projection needs negative modes")
    if engine is None:
        engine = Engine(GeneratorOrder.HC, Ideal.N_MINUS_NEG)
    out = engine.normal_form(x)
    for w in out.terms:
        if not is_cartan_word(w):
            raise ArithmeticError(f"non-Cartan word survived the projection: {w}")
    return out
