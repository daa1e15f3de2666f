"""The 7-dimensional matrix presentation of the Lie algebra of type G2.

Matrices are sparse maps ``{(row, col): ExactScalar}`` with 0-based indices;
functions that take matrix positions by name (``g_matrix_entry``) use
1-based ones.  The fourteen abstract generators are the entries ``G_ij`` with
``1 <= i, j <= 4`` except ``G_33`` and ``G_44``, in lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .exact import SQRT2, ExactScalar, simplify

N = 7


def prime(i: int) -> int:
    """The antidiagonal partner ``i' = 8 - i`` of a 1-based index."""
    return 8 - i


class SparseMatrix:
    """Square sparse matrix with exact entries."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict | None = None) -> None:
        self.n = n
        self.entries = {}
        if entries:
            for k, v in entries.items():
                v = ExactScalar.coerce(v)
                if v:
                    self.entries[k] = v

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, {(i, i): 1 for i in range(n)})

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "SparseMatrix":
        return cls(n, {(i, j): 1})

    def __getitem__(self, key) -> ExactScalar:
        return self.entries.get(key, ExactScalar(0))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseMatrix(self.n, out)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.n, {k: v * c for k, v in self.entries.items()})

    __rmul__ = scale

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        rows: dict = {}
        for (i, k), v in other.entries.items():
            rows.setdefault(i, []).append((k, v))
        out: dict = {}
        for (i, j), a in self.entries.items():
            for k, b in rows.get(j, ()):
                out[(i, k)] = out.get((i, k), 0) + a * b
        return SparseMatrix(self.n, out)

    def bracket(self, other: "SparseMatrix") -> "SparseMatrix":
        return self @ other - other @ self

    def trace(self) -> ExactScalar:
        total = ExactScalar(0)
        for (i, j), v in self.entries.items():
            if i == j:
                total = total + v
        return total

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.n == other.n and self.entries == other.entries

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Tensor product with row-major pair indexing."""
        m = other.n
        out = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                out[(i * m + k, j * m + l)] = a * b
        return SparseMatrix(self.n * m, out)

    def antidiagonal_transpose(self) -> "SparseMatrix":
        """``(e_ij)^t = e_{j'i'}``."""
        n = self.n
        return SparseMatrix(n, {(n - 1 - j, n - 1 - i): v for (i, j), v in self.entries.items()})

    def partial_transpose_second(self) -> "SparseMatrix":
        """Antidiagonal transposition applied to the second tensor factor of a 49x49 operator."""
        out = {}
        for (r, c), v in self.entries.items():
            i, k = divmod(r, N)
            j, l = divmod(c, N)
            out[(i * N + (N - 1 - l), j * N + (N - 1 - k))] = v
        return SparseMatrix(self.n, out)

    def to_rows(self) -> list[list[ExactScalar]]:
        return [[self[(i, j)] for j in range(self.n)] for i in range(self.n)]

    def __repr__(self) -> str:
        return f"SparseMatrix({self.n}, {len(self.entries)} nonzero)"


def e(i: int, j: int) -> SparseMatrix:
    """Matrix unit ``e_ij`` for 1-based indices."""
    return SparseMatrix.unit(N, i - 1, j - 1)


def f(i: int, j: int) -> SparseMatrix:
    """``f_ij = e_ij - e_{j'i'}``."""
    return e(i, j) - e(prime(j), prime(i))


def bilinear_form(x: SparseMatrix, y: SparseMatrix) -> ExactScalar:
    """The invariant form ``<X, Y> = tr(XY) / 6``."""
    return (x @ y).trace() * Fraction(1, 6)


# ---------------------------------------------------------------------------
# Exact linear algebra over Q(sqrt 2)


def solve(matrix: list[list], rhs: list) -> list:
    """Solve ``matrix @ x = rhs`` exactly; raises if singular or inconsistent."""
    n = len(matrix)
    aug = [[ExactScalar.coerce(v) for v in row] + [ExactScalar.coerce(b)] for row, b in zip(matrix, rhs)]
    cols = len(aug[0]) - 1
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != cols:
        raise ArithmeticError("singular linear system")
    for i in range(r, n):
        if aug[i][-1]:
            raise ArithmeticError("inconsistent linear system")
    x = [ExactScalar(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return x


# ---------------------------------------------------------------------------
# Basis and generators


ROLE_CARTAN = "cartan"
ROLE_RAISING = "raising"
ROLE_LOWERING = "lowering"

#: the fourteen generators ``G_ij`` in lexicographic order
GENERATORS: tuple[tuple[int, int], ...] = tuple(
    (i, j) for i in range(1, 5) for j in range(1, 5) if (i, j) not in ((3, 3), (4, 4))
)
GEN_INDEX = {ij: a for a, ij in enumerate(GENERATORS)}
NGEN = len(GENERATORS)

_RAISING = ((1, 2), (2, 4), (1, 4), (4, 3), (2, 3), (1, 3))
_LOWERING = ((2, 1), (4, 2), (4, 1), (3, 4), (3, 2), (3, 1))
# root of each raising generator in the basis (alpha, beta) of simple roots
_POSITIVE_ROOTS = {(1, 2): (1, 0), (2, 4): (0, 1), (1, 4): (1, 1), (4, 3): (1, 2), (2, 3): (1, 3), (1, 3): (2, 3)}


def generator_role(a: int) -> str:
    ij = GENERATORS[a]
    if ij in _RAISING:
        return ROLE_RAISING
    if ij in _LOWERING:
        return ROLE_LOWERING
    return ROLE_CARTAN


def generator_name(a: int) -> str:
    i, j = GENERATORS[a]
    return f"G({i},{j})"


def _primal_basis() -> list[SparseMatrix]:
    r2 = ExactScalar(0, Fraction(1, 2))  # 1/sqrt(2)
    basis = [f(1, 1) - f(2, 2), f(2, 2) - f(3, 3)]
    basis += [f(i, j) for i in range(1, 4) for j in range(1, 4) if i != j]
    basis += [
        f(1, 4) - f(prime(3), 2).scale(r2),
        f(2, 4) - f(prime(1), 3).scale(r2),
        f(3, 4) - f(prime(2), 1).scale(r2),
        f(4, 1) - f(2, prime(3)).scale(r2),
        f(4, 2) - f(3, prime(1)).scale(r2),
        f(4, 3) - f(1, prime(2)).scale(r2),
    ]
    return basis


def printed_dual_basis() -> list[SparseMatrix]:
    """The dual basis exactly as listed alongside the primal one (F read as f)."""
    basis = [f(1, 1).scale(2) - f(2, 2) - f(3, 3), f(1, 1) + f(2, 2) - f(3, 3).scale(2)]
    basis += [f(j, i).scale(3) for i in range(1, 4) for j in range(1, 4) if i != j]
    basis += [
        f(4, 1).scale(2) - f(2, prime(3)).scale(SQRT2),
        f(4, 2).scale(2) - f(3, prime(1)).scale(SQRT2),
        f(4, 3).scale(2) - f(1, prime(2)).scale(SQRT2),
        f(1, 4).scale(2) - f(prime(3), 2).scale(SQRT2),
        f(2, 4).scale(2) - f(prime(1), 3).scale(SQRT2),
        f(3, 4).scale(2) - f(prime(2), 1).scale(SQRT2),
    ]
    return basis


@dataclass(frozen=True)
class G2Basis:
    primal: tuple[SparseMatrix, ...]
    dual: tuple[SparseMatrix, ...]
    #: matrices of the fourteen generators G_ij
    generators: tuple[SparseMatrix, ...]
    roles: tuple[str, ...]
    #: eigenvalues of (ad G11, ad G22) on each generator
    weights: tuple[tuple, ...]
    gram: tuple[tuple[ExactScalar, ...], ...] = field(repr=False)


def _dual_of(primal: list[SparseMatrix]) -> list[SparseMatrix]:
    d = len(primal)
    gram = [[bilinear_form(x, y) for y in primal] for x in primal]
    dual = []
    for i in range(d):
        coeffs = solve(gram, [1 if k == i else 0 for k in range(d)])
        m = SparseMatrix(N)
        for c, x in zip(coeffs, primal):
            if c:
                m = m + x.scale(c)
        dual.append(m)
    return dual


@lru_cache(maxsize=None)
def build_basis() -> G2Basis:
    primal = _primal_basis()
    dual = _dual_of(primal)
    # G_ij = sum_k pi(X^k)_{ji} X_k, with i, j 1-based
    gens = []
    for i, j in GENERATORS:
        m = SparseMatrix(N)
        for xk, x_k in zip(primal, dual):
            c = xk[(j - 1, i - 1)]
            if c:
                m = m + x_k.scale(c)
        gens.append(m)
    gram = tuple(tuple(bilinear_form(x, y) for y in gens) for x in gens)
    roles = tuple(generator_role(a) for a in range(NGEN))
    weights = []
    h11, h22 = gens[GEN_INDEX[(1, 1)]], gens[GEN_INDEX[(2, 2)]]
    for g in gens:
        pair = []
        for h in (h11, h22):
            br = h.bracket(g)
            # g is an eigenvector of ad h: read off the ratio on any nonzero entry
            if br.is_zero():
                pair.append(0)
                continue
            k = next(iter(g.entries))
            lam = br[k] / g[k]
            if br != g.scale(lam):
                raise ArithmeticError("generator is not an ad-h eigenvector")
            pair.append(simplify(lam))
        weights.append(tuple(pair))
    return G2Basis(tuple(primal), tuple(dual), tuple(gens), roles, tuple(weights), gram)


@lru_cache(maxsize=None)
def _dual_generators() -> tuple[SparseMatrix, ...]:
    """Matrices dual to the fourteen generators under the form."""
    basis = build_basis()
    gram = [list(row) for row in basis.gram]
    out = []
    for i in range(NGEN):
        coeffs = solve(gram, [1 if k == i else 0 for k in range(NGEN)])
        out.append(from_coordinates(coeffs))
    return tuple(out)


def coordinates(x: SparseMatrix) -> list[ExactScalar]:
    """Coordinates of a matrix of g in the fourteen generators; raises if x is not in g."""
    coords = [bilinear_form(x, d) for d in _dual_generators()]
    if from_coordinates(coords) != x:
        raise ArithmeticError("matrix does not lie in g")
    return coords


def from_coordinates(coords) -> SparseMatrix:
    basis = build_basis()
    m = SparseMatrix(N)
    for c, g in zip(coords, basis.generators):
        if c:
            m = m + g.scale(c)
    return m


# ---------------------------------------------------------------------------
# Structure constants


@dataclass(frozen=True)
class StructureTable:
    #: c[a][b] = sparse list of (k, coeff) with [G_a, G_b] = sum coeff G_k
    c: tuple[tuple[tuple[tuple[int, ExactScalar], ...], ...], ...]
    gram: tuple[tuple[ExactScalar, ...], ...]

    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of two sparse coordinate vectors ``{a: coeff}``."""
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in self.c[a][b]:
                    out[k] = out.get(k, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def form(self, x: dict, y: dict):
        total = ExactScalar(0)
        for a, ca in x.items():
            for b, cb in y.items():
                total = total + ca * cb * self.gram[a][b]
        return total


@lru_cache(maxsize=None)
def structure_constants() -> StructureTable:
    basis = build_basis()
    gens = basis.generators
    table = []
    for a in range(NGEN):
        row = []
        for b in range(NGEN):
            coords = coordinates(gens[a].bracket(gens[b]))
            row.append(tuple((k, c) for k, c in enumerate(coords) if c))
        table.append(tuple(row))
    return StructureTable(tuple(table), basis.gram)


def gen(i: int, j: int) -> dict:
    """Coordinate vector of a single generator ``G_ij`` (i, j in 1..4)."""
    return {GEN_INDEX[(i, j)]: ExactScalar(1)}


@lru_cache(maxsize=None)
def g_matrix_entry(i: int, j: int) -> dict:
    """``G_ij`` for 1-based ``i, j`` in 1..7 as a coordinate vector ``{a: coeff}``.

    The matrix G places ``G_ij`` at row ``j``, column ``i``.
    """
    basis = build_basis()
    m = SparseMatrix(N)
    for xk, x_k in zip(basis.primal, basis.dual):
        c = xk[(j - 1, i - 1)]
        if c:
            m = m + x_k.scale(c)
    return {a: c for a, c in enumerate(coordinates(m)) if c}


# ---------------------------------------------------------------------------
# The 3-form and the operators P, Q, T, Omega


@lru_cache(maxsize=None)
def beta_form() -> dict:
    """Nonzero coefficients ``beta[(i, j, k)]`` (1-based) of the invariant 3-form."""
    wedges = [(1, (i, 4, prime(i))) for i in (1, 2, 3)]
    wedges += [(SQRT2, (1, 2, 3)), (SQRT2, (prime(3), prime(2), prime(1)))]
    beta: dict = {}
    for coeff, idx in wedges:
        for perm in permutations(range(3)):
            sign = _perm_sign(perm)
            key = tuple(idx[p] for p in perm)
            beta[key] = beta.get(key, 0) + coeff * sign
    return {k: ExactScalar.coerce(v) for k, v in beta.items() if v}


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def beta(i: int, j: int, k: int) -> ExactScalar:
    return beta_form().get((i, j, k), ExactScalar(0))


def permutation_operator() -> SparseMatrix:
    return SparseMatrix(N * N, {(i * N + j, j * N + i): 1 for i in range(N) for j in range(N)})


def q_operator() -> SparseMatrix:
    # Q = sum e_ij (x) e_{i'j'}
    return SparseMatrix(
        N * N, {(i * N + (N - 1 - i), j * N + (N - 1 - j)): 1 for i in range(N) for j in range(N)}
    )


def t_operator() -> SparseMatrix:
    # T = sum beta_ika beta_jla e_ij (x) e_kl
    b = beta_form()
    by_last: dict = {}
    for (x, y, a), v in b.items():
        by_last.setdefault(a, []).append((x, y, v))
    out: dict = {}
    for a, items in by_last.items():
        for i, k, v1 in items:
            for j, l, v2 in items:
                key = ((i - 1) * N + (k - 1), (j - 1) * N + (l - 1))
                out[key] = out.get(key, 0) + v1 * v2
    return SparseMatrix(N * N, out)


def omega_from_basis() -> SparseMatrix:
    basis = build_basis()
    out = SparseMatrix(N * N)
    for x, y in zip(basis.primal, basis.dual):
        out = out + x.kron(y)
    return out


def _cyclic(i: int, sigma: dict) -> int:
    """Apply a permutation of {1,2,3} to an index, preserving primes."""
    if i in (1, 2, 3):
        return sigma[i]
    if i in (5, 6, 7):
        return prime(sigma[prime(i)])
    return i


_CYCLES = ({1: 1, 2: 2, 3: 3}, {1: 3, 2: 1, 3: 2}, {1: 2, 2: 3, 3: 1})


def omega_expansion() -> SparseMatrix:
    """Omega assembled from its explicit expansion in the f_ij (cyclic sums included)."""
    out = SparseMatrix(N * N)
    for i in range(1, 4):
        for j in range(1, 4):
            out = out + f(i, j).kron(f(j, i)).scale(3) - f(i, i).kron(f(j, j))
    for i in range(1, 4):
        out = out + (f(4, i).kron(f(i, 4)) + f(i, 4).kron(f(4, i))).scale(2)

    def fc(s, i, j):
        return f(_cyclic(i, s), _cyclic(j, s))

    for s in _CYCLES:
        out = out + fc(s, 1, prime(2)).kron(fc(s, prime(2), 1)) + fc(s, prime(2), 1).kron(fc(s, 1, prime(2)))
        term = (
            fc(s, 1, 4).kron(fc(s, 2, prime(3)))
            + fc(s, 2, prime(3)).kron(fc(s, 1, 4))
            + fc(s, 4, 1).kron(fc(s, prime(3), 2))
            + fc(s, prime(3), 2).kron(fc(s, 4, 1))
        )
        out = out - term.scale(SQRT2)
    return out


@dataclass(frozen=True)
class TensorOps:
    P: SparseMatrix
    Q: SparseMatrix
    T: SparseMatrix
    Omega: SparseMatrix


@lru_cache(maxsize=None)
def build_tensor_ops() -> TensorOps:
    omega = omega_from_basis()
    if omega != omega_expansion():
        raise ArithmeticError("the two constructions of Omega disagree")
    return TensorOps(permutation_operator(), q_operator(), t_operator(), omega)


# ---------------------------------------------------------------------------
# Chevalley generators


CARTAN_MATRIX = ((2, -1), (-3, 2))


def chevalley_map() -> dict[str, dict]:
    """Images of e1, e2, f1, f2, h1, h2 as coordinate vectors."""
    third = Fraction(1, 3)
    inv_r2 = ExactScalar(0, Fraction(1, 2))
    return {
        "e1": {GEN_INDEX[(1, 2)]: ExactScalar(third)},
        "e2": {GEN_INDEX[(2, 4)]: inv_r2},
        "f1": {GEN_INDEX[(2, 1)]: ExactScalar(third)},
        "f2": {GEN_INDEX[(4, 2)]: inv_r2},
        "h1": {GEN_INDEX[(1, 1)]: ExactScalar(third), GEN_INDEX[(2, 2)]: ExactScalar(-third)},
        "h2": {GEN_INDEX[(2, 2)]: ExactScalar(1)},
    }


def _vec_eq(x: dict, y: dict) -> bool:
    keys = set(x) | set(y)
    return all(x.get(k, 0) == y.get(k, 0) for k in keys)


def _scale(x: dict, c) -> dict:
    return {k: v * c for k, v in x.items() if v * c}


def chevalley_relations() -> dict[str, bool]:
    """Evaluate every Chevalley and Serre relation; maps a label to pass/fail."""
    table = structure_constants()
    ch = chevalley_map()
    br = table.bracket
    results = {}
    for i, j in product((1, 2), repeat=2):
        ei, fj, hi, ej = ch[f"e{i}"], ch[f"f{j}"], ch[f"h{i}"], ch[f"e{j}"]
        expect = ch[f"h{i}"] if i == j else {}
        results[f"[e{i},f{j}]"] = _vec_eq(br(ei, fj), expect)
        results[f"[h{i},h{j}]"] = _vec_eq(br(hi, ch[f"h{j}"]), {})
        a = CARTAN_MATRIX[i - 1][j - 1]
        results[f"[h{i},e{j}]"] = _vec_eq(br(hi, ej), _scale(ej, a))
        results[f"[h{i},f{j}]"] = _vec_eq(br(hi, fj), _scale(fj, -a))

    def ad_power(x, y, n):
        for _ in range(n):
            y = br(x, y)
        return y

    results["(ad e1)^2 e2"] = _vec_eq(ad_power(ch["e1"], ch["e2"], 2), {})
    results["(ad e2)^4 e1"] = _vec_eq(ad_power(ch["e2"], ch["e1"], 4), {})
    results["(ad f1)^2 f2"] = _vec_eq(ad_power(ch["f1"], ch["f2"], 2), {})
    results["(ad f2)^4 f1"] = _vec_eq(ad_power(ch["f2"], ch["f1"], 4), {})
    # the Serre exponents are sharp
    results["(ad e1) e2 != 0"] = not _vec_eq(ad_power(ch["e1"], ch["e2"], 1), {})
    results["(ad e2)^3 e1 != 0"] = not _vec_eq(ad_power(ch["e2"], ch["e1"], 3), {})
    return results


def positive_root(a: int) -> tuple[int, int] | None:
    """Root of a raising generator in simple-root coordinates, negated for lowering ones."""
    ij = GENERATORS[a]
    if ij in _POSITIVE_ROOTS:
        return _POSITIVE_ROOTS[ij]
    if ij in _LOWERING:
        p, q = _POSITIVE_ROOTS[_RAISING[_LOWERING.index(ij)]]
        return (-p, -q)
    return None


# ---------------------------------------------------------------------------
# Rational frame used by the rewriting engine


@lru_cache(maxsize=None)
def frame_scales() -> tuple[ExactScalar, ...]:
    """``s_a`` with engine generator ``E_a = G_a / s_a``.

    The six generators with exactly one index equal to 4 are scaled by
    sqrt(2); in this frame all structure constants and form values are rational.
    """
    return tuple(SQRT2 if 4 in ij else ExactScalar(1) for ij in GENERATORS)


@lru_cache(maxsize=None)
def rational_structure() -> tuple[tuple, tuple]:
    """Structure constants and Gram matrix in the rescaled frame, as ``int``/``Fraction``.

    Returns ``(brackets, gram)`` where ``brackets[a][b]`` is a tuple of
    ``(k, coeff)`` and ``gram[a][b]`` the form value.
    """
    table = structure_constants()
    s = frame_scales()
    brackets = []
    for a in range(NGEN):
        row = []
        for b in range(NGEN):
            terms = []
            for k, c in table.c[a][b]:
                v = c * s[k] / (s[a] * s[b])
                if not v.is_rational:
                    raise ArithmeticError("rescaled structure constant is irrational")
                terms.append((k, v.simplify()))
            row.append(tuple(terms))
        brackets.append(tuple(row))
    gram = []
    for a in range(NGEN):
        row = []
        for b in range(NGEN):
            v = table.gram[a][b] / (s[a] * s[b])
            if not v.is_rational:
                raise ArithmeticError("rescaled form value is irrational")
            row.append(v.simplify())
        gram.append(tuple(row))
    return tuple(brackets), tuple(gram)


def structure_table_json() -> list[dict]:
    """The structure table as a JSON-ready list (generator names, scalar strings)."""
    table = structure_constants()
    out = []
    for a in range(NGEN):
        for b in range(NGEN):
            out.append(
                {
                    "a": generator_name(a),
                    "b": generator_name(b),
                    "terms": [{"c": generator_name(k), "coeff": v.render()} for k, v in table.c[a][b]],
                }
            )
    return out


# ---------------------------------------------------------------------------
# Consistency checks


def _unit(a: int) -> dict:
    return {a: ExactScalar(1)}


def jacobi_failures() -> list[tuple[int, int, int]]:
    """Ordered basis triples violating the Jacobi identity."""
    table = structure_constants()
    br = table.bracket
    pair = [[dict(table.c[a][b]) for b in range(NGEN)] for a in range(NGEN)]
    bad = []
    for a, b, c in product(range(NGEN), repeat=3):
        total: dict = {}
        for x, yz in ((a, pair[b][c]), (b, pair[c][a]), (c, pair[a][b])):
            for k, v in br(_unit(x), yz).items():
                total[k] = total.get(k, 0) + v
        if any(v for v in total.values()):
            bad.append((a, b, c))
    return bad


def antisymmetry_failures() -> list[tuple[int, int]]:
    table = structure_constants()
    return [
        (a, b)
        for a, b in product(range(NGEN), repeat=2)
        if not _vec_eq(dict(table.c[a][b]), _scale(dict(table.c[b][a]), -1))
    ]


def invariance_failures() -> list[tuple[int, int, int]]:
    """Triples with ``<[x,y],z> + <y,[x,z]> != 0``."""
    table = structure_constants()
    bad = []
    for a, b, c in product(range(NGEN), repeat=3):
        x, y, z = _unit(a), _unit(b), _unit(c)
        if table.form(table.bracket(x, y), z) + table.form(y, table.bracket(x, z)):
            bad.append((a, b, c))
    return bad


def listed_relations() -> dict[str, bool]:
    """The commutator list for ``G_ij`` with ``i, j, k, l`` in {1, 2, 3}, plus the sqrt(2) relations."""
    table = structure_constants()
    br = table.bracket

    def G(i, j):
        return g_matrix_entry(i, j)

    def comb(*terms):
        out: dict = {}
        for c, vec in terms:
            for k, v in vec.items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    d = lambda p, q: 1 if p == q else 0  # noqa: E731
    results = {}
    idx = (1, 2, 3)
    for i, j, k, l in product(idx, repeat=4):
        results[f"[G{i}{j},G{k}{l}]"] = _vec_eq(
            br(G(i, j), G(k, l)), comb((3 * d(k, j), G(i, l)), (-3 * d(i, l), G(k, j)))
        )
    for i, j, k in product(idx, repeat=3):
        results[f"[G{i}{j},G{k}4]"] = _vec_eq(
            br(G(i, j), G(k, 4)), comb((3 * d(k, j), G(i, 4)), (-d(i, j), G(k, 4)))
        )
        results[f"[G{i}{j},G4{k}]"] = _vec_eq(
            br(G(i, j), G(4, k)), comb((-3 * d(i, k), G(4, j)), (d(i, j), G(4, k)))
        )
    for i, l in product(idx, repeat=2):
        results[f"[G{i}4,G4{l}]"] = _vec_eq(br(G(i, 4), G(4, l)), comb((2, G(i, l))))
    r = SQRT2 * 2
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        results[f"[G{i}4,G{j}4]"] = _vec_eq(br(G(i, 4), G(j, 4)), comb((r, G(4, k))))
        results[f"[G4{i},G4{j}]"] = _vec_eq(br(G(4, i), G(4, j)), comb((-r, G(k, 4))))
    return results


def uniform_commutator_failures() -> list[tuple[int, int, int, int]]:
    """Index quadruples in 1..7 where the uniform commutator formula disagrees with the table."""
    table = structure_constants()
    b = beta_form()
    G = g_matrix_entry
    bad = []
    for i, j, k, l in product(range(1, N + 1), repeat=4):
        terms: list = []
        if k == j:
            terms.append((1, (i, l)))
        if i == l:
            terms.append((-1, (k, j)))
        if k == prime(i):
            terms.append((-2, (prime(j), l)))
        if prime(j) == l:
            terms.append((2, (k, prime(i))))
        for a, bb in product(range(1, N + 1), repeat=2):
            v = b.get((i, a, bb))
            if v:
                w = b.get((j, l, bb))
                if w:
                    terms.append((v * w, (k, a)))
            v = b.get((i, k, bb))
            if v:
                w = b.get((j, a, bb))
                if w:
                    terms.append((-(v * w), (a, l)))
        rhs: dict = {}
        for c, (p, q) in terms:
            for key, val in G(p, q).items():
                rhs[key] = rhs.get(key, 0) + c * val
        if not _vec_eq(table.bracket(G(i, j), G(k, l)), {x: y for x, y in rhs.items() if y}):
            bad.append((i, j, k, l))
    return bad


def beta_failures() -> dict[str, int]:
    """Antisymmetry and g-invariance defects of the 3-form (counts)."""
    b = beta_form()
    anti = 0
    for (i, j, k), v in b.items():
        for perm in permutations((i, j, k)):
            sign = _perm_sign([(i, j, k).index(p) for p in perm])
            if b.get(perm, ExactScalar(0)) != v * sign:
                anti += 1
    inv = 0
    for x in build_basis().primal:
        out: dict = {}
        for (i, j, k), v in b.items():
            # x acts on each tensor position: e_m -> sum_p x[p, m] e_p
            for (p, m), c in x.entries.items():
                m, p = m + 1, p + 1
                if m == i:
                    out[(p, j, k)] = out.get((p, j, k), 0) + c * v
                if m == j:
                    out[(i, p, k)] = out.get((i, p, k), 0) + c * v
                if m == k:
                    out[(i, j, p)] = out.get((i, j, p), 0) + c * v
        inv += sum(1 for v in out.values() if v)
    return {"antisymmetry": anti, "invariance": inv}


def tensor_relations() -> dict[str, bool]:
    """``Omega = 1 + P - 2Q - T``, the relations among P, Q, T and ``(Omega^2)^t2 = Omega^2 + 12 Omega``."""
    ops = build_tensor_ops()
    P, Q, T, om = ops.P, ops.Q, ops.T, ops.Omega
    one = SparseMatrix.identity(N * N)
    om2 = om @ om
    return {
        "Omega = 1+P-2Q-T": om == one + P - Q.scale(2) - T,
        "P^2 = 1": P @ P == one,
        "Q^2 = 7Q": Q @ Q == Q.scale(7),
        "T^2 = 6T": T @ T == T.scale(6),
        "PQ = Q": P @ Q == Q,
        "PT = -T": P @ T == -T,
        "QT = 0": not (Q @ T).entries,
        "PQ = QP": P @ Q == Q @ P,
        "PT = TP": P @ T == T @ P,
        "QT = TQ": Q @ T == T @ Q,
        "Q = P^t2": P.partial_transpose_second() == Q,
        "(Omega^2)^t2 = Omega^2 + 12 Omega": om2.partial_transpose_second() == om2 + om.scale(12),
    }


def structure_report() -> dict[str, int]:
    """Failure counts of the structure-table checks (all zero when consistent)."""
    listed = listed_relations()
    return {
        "jacobi": len(jacobi_failures()),
        "antisymmetry": len(antisymmetry_failures()),
        "invariance": len(invariance_failures()),
        "listed_relations": sum(1 for ok in listed.values() if not ok),
    }
