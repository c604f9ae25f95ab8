"""Convolutional codes over R[z] for a finite chain ring R.

An encoder is a polynomial matrix G(z) = sum G_i z^i; the code is the set
of gamma-linear combinations of its rows with polynomial digit vectors over
the transversal T.  Column distances are computed by exhaustive message
enumeration on the truncated sliding matrices; the MDP property is decided
either through those distances or through the minor (column-selection)
criterion on the L-th sliding matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil

from .errors import (BudgetExceeded, CodeLoadError, InvalidParams,
                     NotDelayFree, NotReduced, NuNotDividingK,
                     PreconditionViolated, UnequalRowDegrees, ZeroRow)
from .linalg import (RingMatrix, diagonal_reduction, field_rank,
                     gamma_span_solve, is_gamma_generator_sequence,
                     is_gamma_linearly_independent)
from .rings import make_ring

DISTANCES = "distances"
MINORS = "minors"

DEFAULT_DISTANCE_BUDGET = 10 ** 7
GENSEQ_ASSERT_LIMIT = 10 ** 4


class PolyMatrix:
    """Polynomial matrix as a list of coefficient matrices G_0..G_m."""

    __slots__ = ("ring", "k", "n", "coeffs")

    def __init__(self, ring, coeffs, k=None, n=None):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if coeffs:
            k, n = coeffs[0].rows, coeffs[0].cols
            for c in coeffs:
                if c.rows != k or c.cols != n or c.ring != ring:
                    raise ValueError("coefficient matrices disagree")
        elif k is None or n is None:
            raise ValueError("zero polynomial matrix needs explicit k, n")
        self.ring = ring
        self.k = k
        self.n = n
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        """Degree m; -1 for the zero matrix."""
        return len(self.coeffs) - 1

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RingMatrix.zeros(self.ring, self.k, self.n)

    def row_degree(self, i):
        """Degree of row i, or None for a zero row."""
        z = self.ring.zero
        for d in range(len(self.coeffs) - 1, -1, -1):
            if any(e != z for e in self.coeffs[d].row(i)):
                return d
        return None

    def row_degrees(self):
        degs = [self.row_degree(i) for i in range(self.k)]
        if any(d is None for d in degs):
            raise ZeroRow("polynomial matrix has a zero row")
        return degs

    def scalar_mul(self, c):
        return PolyMatrix(self.ring, [m.scalar_mul(c) for m in self.coeffs],
                          k=self.k, n=self.n)

    def stack(self, other):
        m = max(len(self.coeffs), len(other.coeffs))
        return PolyMatrix(self.ring,
                          [self.coefficient(i).stack(other.coefficient(i))
                           for i in range(m)] or [],
                          k=self.k + other.k, n=self.n)

    def reversed_coeffs(self):
        return PolyMatrix(self.ring, list(self.coeffs)[::-1],
                          k=self.k, n=self.n)

    def to_json(self):
        return {"coeffs": [m.to_json() for m in self.coeffs],
                "k": self.k, "n": self.n}

    @classmethod
    def from_json(cls, obj, ring):
        coeffs = [RingMatrix.from_json(m, ring=ring) for m in obj["coeffs"]]
        return cls(ring, coeffs, k=obj.get("k"), n=obj.get("n"))

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and other.ring == self.ring
                and other.coeffs == self.coeffs and other.k == self.k
                and other.n == self.n)

    def __repr__(self):
        return f"PolyMatrix({self.k}x{self.n}, deg={self.degree})"


# ---------------------------------------------------------------------------
# encoder predicates

def leading_coefficient_matrix(G: PolyMatrix) -> RingMatrix:
    rows = []
    for i in range(G.k):
        d = G.row_degree(i)
        if d is None:
            raise ZeroRow(f"row {i} is zero")
        rows.append(G.coeffs[d].row(i))
    return RingMatrix(G.ring, rows, cols=G.n)


def is_reduced(G: PolyMatrix, budget=None):
    kwargs = {} if budget is None else {"budget": budget}
    return is_gamma_linearly_independent(leading_coefficient_matrix(G),
                                         **kwargs)


def is_delay_free(G: PolyMatrix, budget=None):
    kwargs = {} if budget is None else {"budget": budget}
    return is_gamma_linearly_independent(G.coefficient(0), **kwargs)


def gamma_degree(G: PolyMatrix):
    """Sum of row degrees; only an invariant for reduced encoders."""
    if not is_reduced(G):
        raise NotReduced("gamma-degree requires a reduced encoder")
    return sum(G.row_degrees())


def sliding_matrix(G: PolyMatrix, j: int) -> RingMatrix:
    """Block upper-triangular Toeplitz matrix of size (j+1)k x (j+1)n."""
    ring = G.ring
    k, n = G.k, G.n
    zero_block = RingMatrix.zeros(ring, k, n)
    rows = []
    for br in range(j + 1):
        blocks = [G.coefficient(bc - br) if bc >= br else zero_block
                  for bc in range(j + 1)]
        for i in range(k):
            rows.append([e for b in blocks for e in b.row(i)])
    return RingMatrix(ring, rows, cols=(j + 1) * n)


# ---------------------------------------------------------------------------
# coefficient-expansion helpers (bounded-degree polynomial linear algebra)

def _expand_row(G: PolyMatrix, i, shift, width):
    """Coefficient vector of z^shift * row_i(z), width blocks of n."""
    ring = G.ring
    out = []
    for d in range(width):
        if d >= shift:
            out.extend(G.coefficient(d - shift).row(i))
        else:
            out.extend([ring.zero] * G.n)
    return out


def _expansion_matrix(G: PolyMatrix, row_idx, shifts, width):
    rows = [_expand_row(G, i, t, width) for i in row_idx for t in shifts]
    return RingMatrix(G.ring, rows, cols=width * G.n)


def is_polynomial_gamma_basis(G: PolyMatrix, budget=None):
    """Whether the rows of G(z) form a gamma-basis of the module they span.

    Decided on the coefficient expansion with digit polynomials of degree
    up to deg(G): shifted copies of the rows are stacked into a block
    matrix and the block-level oracle machinery is applied.  Dependencies
    requiring higher-degree digits are not detected (documented bound)."""
    ring = G.ring
    m = max(G.degree, 0)
    width = 2 * m + 1
    shifts = range(m + 1)
    kwargs = {} if budget is None else {"budget": budget}
    stacked = _expansion_matrix(G, range(G.k), shifts, width)
    if not is_gamma_linearly_independent(stacked, **kwargs):
        return False
    # gamma-generator-sequence at the polynomial level
    gamma = ring.gamma
    for i in range(G.k):
        target = [ring.mul(gamma, e) for e in _expand_row(G, i, 0, width)]
        if i == G.k - 1:
            if any(e != ring.zero for e in target):
                return False
            continue
        tail = _expansion_matrix(G, range(i + 1, G.k), shifts, width)
        if gamma_span_solve(tail, target, **kwargs) is None:
            return False
    return True


def _ring_solve_left(A: RingMatrix, target):
    """Whether some u in R^m solves u*A == target (full ring coefficients)."""
    ring = A.ring
    exps, L, R = diagonal_reduction(A)
    # u*A = target  <=>  y*D = target*R with y = u*L^{-1} unconstrained
    w = []
    for j in range(A.cols):
        acc = ring.zero
        for i in range(A.cols):
            acc = ring.add(acc, ring.mul(target[i], R.entry(i, j)))
        w.append(acc)
    for j in range(A.cols):
        if j < len(exps):
            if ring.valuation(w[j]) < exps[j]:
                return False
        elif w[j] != ring.zero:
            return False
    return True


def is_free_code(G: PolyMatrix, degree_slack=2):
    """Whether the row module of G(z) over R[z] is free.

    Certified through bounded-degree coefficient stacking: greedily select
    rows that are R[z]-linearly independent of the earlier selection; the
    module is free iff the remaining rows lie in the R[z]-span of the
    selection.  Digit-polynomial degrees are bounded by deg(G) +
    degree_slack."""
    ring = G.ring
    m = max(G.degree, 0)
    bound = m + degree_slack
    width = m + bound + 1
    shifts = range(bound + 1)
    kept = []
    deferred = []
    for i in range(G.k):
        row = _expand_row(G, i, 0, width)
        if all(e == ring.zero for e in row):
            continue
        if not kept:
            kept.append(i)
            continue
        A = _expansion_matrix(G, kept, shifts, width)
        if _ring_solve_left(A, row):
            deferred.append(i)
            continue
        # row is independent from the kept ones; check it is torsion-free
        kept.append(i)
    if not kept:
        return True  # zero module is free
    A = _expansion_matrix(G, kept, shifts, width)
    # the kept rows must be R[z]-independent: no gamma-power kills them
    exps, _, _ = diagonal_reduction(A)
    expected = len(kept) * len(shifts)
    if len(exps) != expected or any(e != 0 for e in exps):
        return False
    for i in deferred:
        if not _ring_solve_left(A, _expand_row(G, i, 0, width)):
            return False
    return True


# ---------------------------------------------------------------------------
# the code object

class ConvCode:
    """Convolutional code given by a gamma-encoder."""

    def __init__(self, ring, n, encoder: PolyMatrix, validate=True,
                 budget=None):
        if encoder.n != n or encoder.ring != ring:
            raise ValueError("encoder does not match ring or length")
        if validate and not is_polynomial_gamma_basis(encoder, budget=budget):
            raise ValueError("encoder rows do not form a gamma-basis")
        self.ring = ring
        self.n = n
        self.encoder = encoder
        self.k = encoder.k
        self._reduced = None
        self._delay_free = None

    def reduced(self):
        if self._reduced is None:
            self._reduced = is_reduced(self.encoder)
        return self._reduced

    def delay_free(self):
        if self._delay_free is None:
            self._delay_free = is_delay_free(self.encoder)
        return self._delay_free

    @property
    def delta(self):
        """Gamma-degree; defined through a reduced encoder."""
        return gamma_degree(self.encoder)

    def to_json(self):
        return {"ring": self.ring.descriptor(), "n": self.n,
                "encoder": self.encoder.to_json(),
                "claimed": {"k": self.k, "delta": self.delta}}

    @classmethod
    def from_json(cls, obj, validate=True):
        try:
            ring = make_ring(obj["ring"])
            encoder = PolyMatrix.from_json(obj["encoder"], ring)
            code = cls(ring, obj["n"], encoder, validate=validate)
        except (KeyError, ValueError, TypeError) as exc:
            raise CodeLoadError(str(exc)) from exc
        claimed = obj.get("claimed")
        if claimed is not None:
            if claimed.get("k") is not None and claimed["k"] != code.k:
                raise CodeLoadError(
                    f"claimed k={claimed['k']} but encoder has k={code.k}")
            if claimed.get("delta") is not None:
                delta = gamma_degree(encoder)
                if claimed["delta"] != delta:
                    raise CodeLoadError(
                        f"claimed delta={claimed['delta']} but encoder "
                        f"has gamma-degree {delta}")
        return code

    def __repr__(self):
        return f"ConvCode(n={self.n}, k={self.k}, ring={self.ring!r})"


# ---------------------------------------------------------------------------
# column distances

def column_distance(C: ConvCode, j, budget=DEFAULT_DISTANCE_BUDGET):
    """Minimum truncated weight over messages with nonzero first block."""
    if not C.delay_free():
        raise NotDelayFree("column distances need a delay-free encoder")
    ring = C.ring
    k, n = C.k, C.n
    reps = ring.representatives()
    q = ring.q
    count = (q ** k - 1) * q ** (j * k)
    if count > budget:
        raise BudgetExceeded(
            f"column distance j={j} needs {count} weight evaluations")
    S = sliding_matrix(C.encoder, j)
    zero = ring.zero
    # scaled-row tables: scaled[r][rep index] = rep * row_r
    scaled = [[tuple(ring.mul(t, e) for e in S.row(r)) if t != zero else None
               for t in reps] for r in range(S.rows)]
    width = (j + 1) * n
    zero_head = (0,) * k
    best = None
    for head in product(range(q), repeat=k):
        if head == zero_head:
            continue
        for tail in product(range(q), repeat=j * k):
            acc = [zero] * width
            for r, ti in enumerate(head + tail):
                srow = scaled[r][ti]
                if srow is not None:
                    for c in range(width):
                        acc[c] = ring.add(acc[c], srow[c])
            w = sum(1 for e in acc if e != zero)
            if best is None or w < best:
                best = w
    return best


@dataclass(frozen=True)
class DistanceProfile:
    values: tuple


@dataclass(frozen=True)
class DistanceBounds:
    L: int
    N: int
    per_j: tuple
    generalized_singleton: int


def distance_profile(C: ConvCode, max_j, budget=DEFAULT_DISTANCE_BUDGET):
    return DistanceProfile(tuple(column_distance(C, j, budget=budget)
                                 for j in range(max_j + 1)))


# ---------------------------------------------------------------------------
# bounds

def generalized_singleton_bound(n, k, delta, nu):
    """Free-distance Singleton-type bound for an (n,k,delta) code."""
    if k < 1 or n < 1 or nu < 1 or delta < 0:
        raise InvalidParams(f"bad parameters n={n}, k={k}, delta={delta}")
    f = delta // k
    frac = Fraction(k, nu) * (f + 1) - Fraction(delta, nu)
    return n * (f + 1) - ceil(frac) + 1


def column_distance_bound(j, n, params, k):
    """Column-distance bound from the constant-block parameters
    (k_0..k_{nu-1}); out-of-range parameter indices count as zero."""
    nu = len(params)
    if k < 1 or n < 1 or nu < 1 or j < 0 or any(p < 0 for p in params):
        raise InvalidParams("bad column-distance-bound inputs")

    def kp(i):
        return params[i] if 0 <= i < nu else 0

    if j <= nu:
        head = sum(kp(i) for i in range(0, nu - j + 1))
        tail = sum(s * kp(nu - (s - 1)) for s in range(2, j + 1))
        return (j + 1) * (n - head) - tail + 1
    return (j + 1) * n - sum(params) - k - (j - nu) * params[0] + 1


def optimal_cd_bound(j, n, k, nu):
    """Column-distance bound under the distance-optimal parameter choice."""
    if k < 1 or nu < 1 or j < 0 or n < ceil(k / nu):
        raise InvalidParams(f"bad parameters n={n}, k={k}, nu={nu}, j={j}")
    big = ceil(k / nu)
    small = k // nu
    N = k - small * nu
    if j <= N:
        return (n - big) * (j + 1) + 1
    return (n - big) * (j + 1) - (big - small) * (N + 1) + 1


def L_index(n, k, delta, nu):
    """Largest j whose column-distance bound stays within the Singleton
    bound; closed form available only when nu divides k."""
    if k < 1 or nu < 1:
        raise InvalidParams(f"bad parameters k={k}, nu={nu}")
    if k % nu:
        raise NuNotDividingK(
            f"L has no implemented closed form when nu={nu} does not "
            f"divide k={k}")
    return delta // k + (delta // nu) // (n - k // nu)


def field_L_index(n, k, delta):
    """L for the residue-field code with the same (n,k,delta)."""
    if k < 1 or n <= k:
        raise InvalidParams(f"bad field parameters n={n}, k={k}")
    return delta // k + delta // (n - k)


def embedding_preserves_L(n, k, delta):
    """Whether the ring L equals the field L for (n,k,delta): exactly when
    delta < n - k."""
    return delta < n - k


def distance_bounds(n, k, delta, nu, max_j=None):
    L = L_index(n, k, delta, nu)
    N = k - (k // nu) * nu
    top = L if max_j is None else max_j
    return DistanceBounds(
        L=L, N=N,
        per_j=tuple(optimal_cd_bound(j, n, k, nu) for j in range(top + 1)),
        generalized_singleton=generalized_singleton_bound(n, k, delta, nu))


# ---------------------------------------------------------------------------
# MDP predicates

def _admissible_column_subsets(L, n, k0):
    """0-based column index tuples t_1 < ... < t_{(L+1)k0} of the L-th
    sliding matrix with t_{s*k0+1} > s*n (1-based), lexicographic."""
    total = (L + 1) * n
    need = (L + 1) * k0

    def rec(start, chosen):
        c = len(chosen)
        if c == need:
            yield tuple(chosen)
            return
        lo = start
        if c % k0 == 0:
            s = c // k0
            if 1 <= s <= L:
                lo = max(lo, s * n)
        for t in range(lo, total - (need - c) + 1):
            chosen.append(t)
            yield from rec(t + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def _check_mdp_preconditions(C: ConvCode):
    from .linalg import parameters_of
    ring = C.ring
    if not C.delay_free():
        raise PreconditionViolated("encoder is not delay-free")
    if C.k % ring.nu:
        raise PreconditionViolated(
            f"nu={ring.nu} does not divide k={C.k}")
    k0 = C.k // ring.nu
    expected = (k0,) + (0,) * (ring.nu - 1)
    got = parameters_of(C.encoder.coefficient(0))
    if got != expected:
        raise PreconditionViolated(
            f"constant-block parameters {got} differ from {expected}")
    if not C.reduced():
        raise PreconditionViolated(
            "encoder is not reduced; gamma-degree undefined")
    return k0


def _minors_condition(S: RingMatrix, L, n, k0, assert_genseq=True):
    """Every admissible column selection of the sliding-type matrix S has
    gamma-linearly independent rows; decided by the residue-rank fast path
    (valid because the selections are gamma-generator sequences and the
    row count is nu times the column count)."""
    ring = S.ring
    field = ring.residue
    need = (L + 1) * k0
    proj = S.residue_rows()
    checked_genseq = not assert_genseq
    for subset in _admissible_column_subsets(L, n, k0):
        if not checked_genseq:
            # licensing assertion for the fast path, size-guarded
            if field.q ** S.rows <= GENSEQ_ASSERT_LIMIT:
                sub = S.select_columns(subset)
                assert is_gamma_generator_sequence(sub), \
                    "column selection broke the generator-sequence property"
            checked_genseq = True
        rows = [[prow[c] for c in subset] for prow in proj]
        if field_rank(field, rows) != need:
            return False
    return True


def is_mdp(C: ConvCode, method=MINORS, budget=DEFAULT_DISTANCE_BUDGET):
    ring = C.ring
    k0 = _check_mdp_preconditions(C)
    L = L_index(C.n, C.k, C.delta, ring.nu)
    if method == DISTANCES:
        for j in range(L + 1):
            if column_distance(C, j, budget=budget) != \
                    (C.n - k0) * (j + 1) + 1:
                return False
        return True
    if method != MINORS:
        raise ValueError(f"unknown method {method!r}")
    S = sliding_matrix(C.encoder, L)
    if ring.q ** S.rows <= GENSEQ_ASSERT_LIMIT:
        assert is_gamma_generator_sequence(S), \
            "sliding matrix rows are not a gamma-generator sequence"
    return _minors_condition(S, L, C.n, k0)


def reverse_encoder(C: ConvCode) -> PolyMatrix:
    """Coefficient-reversed encoder of the reverse code."""
    if not C.reduced():
        raise NotReduced("reverse encoder needs a reduced encoder")
    degs = C.encoder.row_degrees()
    if len(set(degs)) != 1:
        raise UnequalRowDegrees(f"row degrees {degs} are not all equal")
    return C.encoder.reversed_coeffs()


def is_reverse_mdp(C: ConvCode, method=MINORS,
                   budget=DEFAULT_DISTANCE_BUDGET):
    if not is_mdp(C, method=method, budget=budget):
        return False
    rev = reverse_encoder(C)
    ring = C.ring
    k0 = C.k // ring.nu
    L = L_index(C.n, C.k, C.delta, ring.nu)
    S = sliding_matrix(rev, L)
    return _minors_condition(S, L, C.n, k0)
