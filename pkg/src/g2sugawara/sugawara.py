"""Segal-Sugawara vectors for G2 and their verification in the vacuum module."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import g2
from .exact import ExactScalar
from .pbw import (
    G11,
    NGEN,
    Engine,
    GeneratorOrder,
    Ideal,
    LoopElement,
    apply_translation,
    encode,
    format_gen,
    from_coordinates,
    weight,
)

N = g2.N
CRITICAL_LEVEL = -12

#: each vector as a list of (coefficient, modes of the trace factors)
SS_DEFINITIONS: dict[str, tuple[tuple[int, tuple[int, ...]], ...]] = {
    "S2": ((1, (-1, -1)),),
    "S3": ((1, (-1, -1, -1)),),
    "S4": ((1, (-1, -1, -1, -1)), (1, (-2, -1, -1))),
    "S5": ((1, (-1, -1, -1, -1, -1)), (1, (-2, -1, -1, -1))),
    "S6": (
        (1, (-1, -1, -1, -1, -1, -1)),
        (5, (-2, -1, -1, -1, -1)),
        (14, (-3, -1, -1, -1)),
        (456, (-3, -3)),
        (-639, (-2, -2, -2)),
        (31, (-2, -2, -1, -1)),
        (-312, (-3, -2, -1)),
    ),
}

TAGS = tuple(SS_DEFINITIONS)


class AlgMatrix:
    """7x7 matrix with :class:`LoopElement` entries, indexed ``[row][col]`` from 0."""

    __slots__ = ("rows",)

    def __init__(self, rows: list[list[LoopElement]]) -> None:
        self.rows = rows

    @classmethod
    def zero(cls) -> "AlgMatrix":
        return cls([[LoopElement() for _ in range(N)] for _ in range(N)])

    def __getitem__(self, key) -> LoopElement:
        i, j = key
        return self.rows[i][j]

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        return AlgMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __matmul__(self, other: "AlgMatrix") -> "AlgMatrix":
        out = AlgMatrix.zero()
        for i in range(N):
            for j in range(N):
                acc = LoopElement()
                for k in range(N):
                    if self.rows[i][k] and other.rows[k][j]:
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                out.rows[i][j] = acc
        return out

    def g_entry(self, i: int, j: int) -> LoopElement:
        """The entry labelled ``(i, j)`` (1-based) for matrices built as ``sum e_ji (x) x_ij``."""
        return self.rows[j - 1][i - 1]

    def trace(self) -> LoopElement:
        acc = LoopElement()
        for i in range(N):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self) -> "AlgMatrix":
        """Antidiagonal transposition of the matrix positions."""
        return AlgMatrix([[self.rows[N - 1 - j][N - 1 - i] for j in range(N)] for i in range(N)])

    def map(self, fn) -> "AlgMatrix":
        return AlgMatrix([[fn(x) for x in row] for row in self.rows])


def loop_g_matrix(r: int) -> AlgMatrix:
    """``G[r] = sum e_ji (x) G_ij[r]``: ``G_ij[r]`` sits at row ``j``, column ``i``."""
    rows = [[LoopElement() for _ in range(N)] for _ in range(N)]
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            rows[j - 1][i - 1] = from_coordinates(g2.g_matrix_entry(i, j), r)
    return AlgMatrix(rows)


def trace_product(ms: list[AlgMatrix]) -> LoopElement:
    """``tr(M_1 ... M_p)`` expanded over index cycles, without reordering."""
    if not ms:
        return LoopElement.one(N)
    acc = ms[0]
    for m in ms[1:]:
        acc = acc @ m
    return acc.trace()


# ---------------------------------------------------------------------------
# Fast traces as states of a cyclic module


def _scaled_entries(r: int) -> list[list[tuple[tuple[int, object], ...]]]:
    """Entries of ``D^{-1} G[r] D`` with ``D = diag(1,1,1,sqrt2,1,1,1)`` as linear forms.

    Conjugation leaves traces unchanged and makes every entry rational in
    the engine frame.
    """
    scales = g2.frame_scales()
    d = [ExactScalar(1)] * N
    d[3] = g2.SQRT2
    out = []
    for row in range(N):
        line = []
        for col in range(N):
            coords = g2.g_matrix_entry(col + 1, row + 1)
            terms = []
            for a, c in coords.items():
                v = c * scales[a] * d[col] / d[row]
                if not v.is_rational:
                    raise ArithmeticError("conjugated G-matrix entry is irrational")
                terms.append((encode(a, r), v.simplify()))
            line.append(tuple(terms))
        out.append(line)
    return out


class TraceBuilder:
    """Computes ``tr G[r_1] ... G[r_p]`` applied to the cyclic vector of an engine.

    Partial products ``G[r_k] ... G[r_p] v`` are cached by their mode suffix,
    so vectors sharing trailing factors reuse work.
    """

    def __init__(self, engine: Engine) -> None:
        self.engine = engine
        self._entries: dict[int, list] = {}
        self._columns: dict[tuple, list] = {}

    def entries(self, r: int):
        if r not in self._entries:
            key = self.engine._key
            self._entries[r] = [
                [tuple((key(code), c) for code, c in cell) for cell in row] for row in _scaled_entries(r)
            ]
        return self._entries[r]

    def _apply(self, r: int, cols: list) -> list:
        ent = self.entries(r)
        act_state = self.engine.act_state
        out = []
        for col in cols:
            newcol = []
            for x in range(N):
                acc: dict = {}
                for y in range(N):
                    if not col[y]:
                        continue
                    for code, c in ent[x][y]:
                        for w, d in act_state(code, col[y], c).items():
                            acc[w] = acc[w] + d if w in acc else d
                newcol.append({w: c for w, c in acc.items() if c})
            out.append(newcol)
        return out

    def columns(self, modes: tuple[int, ...]) -> list:
        """``cols[a][x]`` = state of entry ``(x, a)`` of the product applied to the cyclic vector."""
        hit = self._columns.get(modes)
        if hit is not None:
            return hit
        if not modes:
            cols = [[{(): 1} if x == a else {} for x in range(N)] for a in range(N)]
        else:
            cols = self._apply(modes[0], self.columns(modes[1:]))
        self._columns[modes] = cols
        return cols

    def trace(self, modes: tuple[int, ...]) -> dict:
        cols = self.columns(modes[1:])
        ent = self.entries(modes[0])
        act_state = self.engine.act_state
        acc: dict = {}
        for a in range(N):
            for y in range(N):
                if not cols[a][y]:
                    continue
                for code, c in ent[a][y]:
                    for w, d in act_state(code, cols[a][y], c).items():
                        acc[w] = acc[w] + d if w in acc else d
        return {w: c for w, c in acc.items() if c}

    def combination(self, definition) -> dict:
        acc: dict = {}
        for coeff, modes in definition:
            for w, c in self.trace(modes).items():
                v = c * coeff
                acc[w] = acc[w] + v if w in acc else v
        return {w: c for w, c in acc.items() if c}


def vacuum_engine(level=CRITICAL_LEVEL) -> Engine:
    return Engine(GeneratorOrder.VACUUM, Ideal.G_POLY_T, level=level)


def mutated_definition(tag: str, term: int, delta: int = -1):
    """The definition of ``tag`` with one printed coefficient shifted by ``delta``."""
    definition = list(SS_DEFINITIONS[tag])
    coeff, modes = definition[term]
    definition[term] = (coeff + delta, modes)
    return tuple(definition)


@dataclass
class SSVector:
    tag: str
    value: LoopElement

    @property
    def degree(self) -> int:
        return self.value.degree()


_SS_CACHE: dict[str, SSVector] = {}


def build_ss_vector(tag: str, builder: TraceBuilder | None = None) -> SSVector:
    """``S_tag`` as a normal-ordered element of U(t^-1 g[t^-1]) (vacuum order)."""
    if tag not in SS_DEFINITIONS:
        raise KeyError(f"unknown Segal-Sugawara vector {tag!r}")
    if builder is None and tag in _SS_CACHE:
        return _SS_CACHE[tag]
    own = builder is None
    builder = builder or TraceBuilder(vacuum_engine())
    state = builder.combination(SS_DEFINITIONS[tag])
    vec = SSVector(tag, builder.engine.state_to_element(state))
    if own:
        _SS_CACHE[tag] = vec
    return vec


# ---------------------------------------------------------------------------
# Verification


PROBES: tuple[tuple[str, int], ...] = tuple(
    (f"{format_gen(encode(a, 0))}", encode(a, 0)) for a in range(NGEN)
) + ((format_gen(encode(G11, 1)), encode(G11, 1)),)


def probe_codes(which: str = "all") -> tuple[tuple[str, int], ...]:
    if which == "all":
        return PROBES
    if which == "zero-modes":
        return PROBES[:-1]
    if which == "g11-1":
        return PROBES[-1:]
    raise ValueError(f"unknown probe set {which!r}")


@dataclass
class ProbeResult:
    name: str
    residue_terms: int
    ok: bool
    residue: LoopElement = field(repr=False, default_factory=LoopElement)


@dataclass
class Certificate:
    """Outcome of a verification run."""

    name: str
    ok: bool
    items: list = field(default_factory=list)
    term_count_peak: int = 0
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)


def verify_invariance(
    tag: str,
    probes: str = "all",
    definition=None,
    level=CRITICAL_LEVEL,
) -> Certificate:
    """Apply each probe to ``S_tag`` in the vacuum module and record the residues.

    ``definition`` overrides the printed combination (used for negative
    controls); ``level`` is the value of ``K`` (``None`` keeps it symbolic).
    """
    start = time.perf_counter()
    engine = vacuum_engine(level)
    builder = TraceBuilder(engine)
    state = builder.combination(definition if definition is not None else SS_DEFINITIONS[tag])
    results = []
    peak = len(state)
    for name, code in probe_codes(probes):
        residue = engine.act_state(code, state)
        peak = max(peak, len(residue))
        results.append(ProbeResult(name, len(residue), not residue, engine.state_to_element(residue)))
    return Certificate(
        name=f"verify-ss {tag}",
        ok=all(r.ok for r in results),
        items=results,
        term_count_peak=peak,
        wall_time=time.perf_counter() - start,
        extra={"vector_terms": len(state), "memo_entries": engine.memo_size()},
    )


def zero_mode_residue(modes: tuple[int, ...]) -> int:
    """Total residue terms of every ``G_a[0]`` applied to ``tr G[r_1] ... G[r_p]`` in the vacuum module."""
    engine = vacuum_engine()
    state = TraceBuilder(engine).trace(tuple(modes))
    return sum(len(engine.act_state(engine._key(encode(a, 0)), state)) for a in range(NGEN))


def _free_engine() -> Engine:
    return Engine(GeneratorOrder.VACUUM, level=CRITICAL_LEVEL)


def derivative(x: LoopElement, k: int = 1, engine: Engine | None = None) -> LoopElement:
    """``D^k x`` renormalised."""
    engine = engine or _free_engine()
    for _ in range(k):
        x = engine.normal_form(apply_translation(x))
    return x


def product_nf(x: LoopElement, y: LoopElement, engine: Engine | None = None) -> LoopElement:
    engine = engine or _free_engine()
    return engine.state_to_element(engine.apply_element(x, engine.element_to_state(y)))


def verify_corollary_relations() -> Certificate:
    """``S3 = -3 S2'``, ``4 S4 = S2^2 + 24 S2''``, ``4 S5 = -7 S2 S2' - 48 S2'''``."""
    start = time.perf_counter()
    engine = _free_engine()
    s = {tag: build_ss_vector(tag).value for tag in ("S2", "S3", "S4", "S5")}
    d1 = derivative(s["S2"], 1, engine)
    d2 = derivative(d1, 1, engine)
    d3 = derivative(d2, 1, engine)
    sq = product_nf(s["S2"], s["S2"], engine)
    s2d1 = product_nf(s["S2"], d1, engine)
    checks = {
        "S3 + 3 S2'": s["S3"] + d1.scale(3),
        "4 S4 - S2^2 - 24 S2''": s["S4"].scale(4) - sq - d2.scale(24),
        "4 S5 + 7 S2 S2' + 48 S2'''": s["S5"].scale(4) + s2d1.scale(7) + d3.scale(48),
    }
    items = [ProbeResult(k, len(v), not v, v) for k, v in checks.items()]
    return Certificate(
        "verify-corollary",
        all(i.ok for i in items),
        items,
        term_count_peak=max(len(sq), len(s["S5"])),
        wall_time=time.perf_counter() - start,
    )


def casimir(k: int, engine: Engine | None = None) -> LoopElement:
    """``tr G^k`` in the enveloping algebra of g (mode-0 generators), normal-ordered."""
    engine = engine or _free_engine()
    builder = TraceBuilder(engine)
    return engine.state_to_element(builder.trace((0,) * k))


def verify_casimir(degrees=(2, 3, 4, 5, 6)) -> Certificate:
    """``[G_a, tr G^k] = 0`` for every generator and each degree."""
    start = time.perf_counter()
    engine = _free_engine()
    items = []
    peak = 0
    for k in degrees:
        builder = TraceBuilder(engine)
        c = builder.trace((0,) * k)
        peak = max(peak, len(c))
        cel = engine.state_to_element(c)
        for a in range(NGEN):
            code = encode(a, 0)
            left = engine.act_state(code, c)
            right = engine.apply_element(cel, {(code,): 1})
            diff = dict(left)
            for w, v in right.items():
                diff[w] = diff[w] - v if w in diff else -v
            diff = {w: v for w, v in diff.items() if v}
            items.append(ProbeResult(f"[{format_gen(code)}, tr G^{k}]", len(diff), not diff))
    return Certificate("verify-casimir", all(i.ok for i in items), items, peak, time.perf_counter() - start)


def transposition_identity() -> LoopElement:
    """``(G[-1]^2)^t - G[-1]^2 - 12 G[-2]`` entrywise, normal-ordered; zero entries expected."""
    engine = _free_engine()
    g1 = loop_g_matrix(-1)
    sq = (g1 @ g1).map(engine.normal_form)
    lhs = sq.transpose()
    g2m = loop_g_matrix(-2)
    total = LoopElement()
    bad = []
    for i in range(N):
        for j in range(N):
            d = lhs[i, j] - sq[i, j] - g2m[i, j].scale(12)
            if d:
                bad.append((i, j))
                total = total + d
    return total


def symbol(x: LoopElement) -> dict:
    """Top-degree part as a commutative polynomial: sorted word -> coefficient."""
    deg = x.degree()
    out: dict = {}
    for w, c in x.terms.items():
        if len(w) == deg:
            key = tuple(sorted(w))
            out[key] = out[key] + c if key in out else c
    return {k: v for k, v in out.items() if v}


def commutative_trace_power(k: int, mode: int = -1) -> dict:
    """``tr Gbar^k`` in the symmetric algebra, generators placed at ``mode``."""
    ent = _scaled_entries(mode)
    # polynomial arithmetic on sorted tuples
    cols = [[{(): 1} if x == a else {} for x in range(N)] for a in range(N)]
    for _ in range(k):
        new = []
        for col in cols:
            newcol = []
            for x in range(N):
                acc: dict = {}
                for y in range(N):
                    for w, c in col[y].items():
                        for code, d in ent[x][y]:
                            nw = tuple(sorted(w + (code,)))
                            acc[nw] = acc.get(nw, 0) + c * d
                newcol.append({w: c for w, c in acc.items() if c})
            new.append(newcol)
        cols = new
    acc: dict = {}
    for a in range(N):
        for w, c in cols[a][a].items():
            acc[w] = acc.get(w, 0) + c
    return {w: c for w, c in acc.items() if c}


def ss_weight(tag: str):
    return weight(build_ss_vector(tag).value)


__all__ = [
    "AlgMatrix",
    "CRITICAL_LEVEL",
    "Certificate",
    "ProbeResult",
    "SSVector",
    "SS_DEFINITIONS",
    "TAGS",
    "TraceBuilder",
    "build_ss_vector",
    "casimir",
    "commutative_trace_power",
    "derivative",
    "loop_g_matrix",
    "mutated_definition",
    "product_nf",
    "symbol",
    "trace_product",
    "transposition_identity",
    "verify_casimir",
    "verify_corollary_relations",
    "verify_invariance",
]
