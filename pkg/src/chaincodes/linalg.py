"""Exact matrix algebra over a chain ring.

Everything here works on :class:`RingMatrix` values whose entries are raw
coordinate tuples.  The workhorses are a Smith-like diagonal reduction
(every entry of a chain ring is unit * gamma^e, so minimal-valuation
pivoting terminates), the module shape / parameters derived from it, and
the enumeration oracle for gamma-linear independence and gamma-span
membership.  The oracle projects to the residue field, enumerates the
(affine) kernel there and lifts candidates through the transversal T;
this is sound and complete because lift(project(t)) == t for t in T.
"""

from __future__ import annotations

from itertools import product

from .errors import (BudgetExceeded, MethodPreconditionViolated, NotSquare,
                     ZeroMatrix)

ORACLE = "oracle"
SHAPE_FAST = "shape-fast"

DEFAULT_ORACLE_BUDGET = 10 ** 6


class RingMatrix:
    """Immutable dense matrix; entries are coordinate tuples."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring, data, cols=None):
        self.ring = ring
        data = [tuple(ring.coerce(x) for x in row) for row in data]
        self.rows = len(data)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.cols = widths.pop()
        else:
            self.cols = 0 if cols is None else cols
        self.data = tuple(data)

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one, ring.zero
        return cls(ring, [[one if i == j else zero for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zeros(cls, ring, m, n):
        return cls(ring, [[ring.zero] * n for _ in range(m)], cols=n)

    def entry(self, i, j):
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def is_zero(self):
        z = self.ring.zero
        return all(e == z for row in self.data for e in row)

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ring = self.ring
        out = []
        for i in range(self.rows):
            arow = self.data[i]
            orow = []
            for j in range(other.cols):
                acc = ring.zero
                for k in range(self.cols):
                    a = arow[k]
                    if a != ring.zero:
                        acc = ring.add(acc, ring.mul(a, other.data[k][j]))
                orow.append(acc)
            out.append(orow)
        return RingMatrix(ring, out, cols=other.cols)

    def scalar_mul(self, c):
        ring = self.ring
        c = ring.coerce(c)
        return RingMatrix(ring, [[ring.mul(c, e) for e in row]
                                 for row in self.data], cols=self.cols)

    def stack(self, other):
        if other.cols != self.cols or other.ring != self.ring:
            raise ValueError("dimension or ring mismatch")
        return RingMatrix(self.ring, list(self.data) + list(other.data),
                          cols=self.cols)

    def submatrix(self, row_idx, col_idx):
        return RingMatrix(self.ring,
                          [[self.data[i][j] for j in col_idx]
                           for i in row_idx], cols=len(col_idx))

    def select_columns(self, col_idx):
        return self.submatrix(range(self.rows), col_idx)

    def residue_rows(self):
        """Projection to the residue field, as lists of field codes."""
        proj = self.ring.project
        return [[proj(e) for e in row] for row in self.data]

    def to_json(self):
        ring = self.ring
        return {"ring": ring.descriptor(), "rows": self.rows,
                "cols": self.cols,
                "entries": [ring.element_to_json(e)
                            for row in self.data for e in row]}

    @classmethod
    def from_json(cls, obj, ring=None):
        from .rings import make_ring
        if ring is None:
            ring = make_ring(obj["ring"])
        m, n = obj["rows"], obj["cols"]
        entries = [ring.element_from_json(e) for e in obj["entries"]]
        if len(entries) != m * n:
            raise ValueError("entry count does not match rows*cols")
        return cls(ring, [entries[i * n:(i + 1) * n] for i in range(m)],
                   cols=n)

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and other.ring == self.ring
                and other.data == self.data and other.cols == self.cols)

    def __hash__(self):
        return hash((self.ring, self.data))

    def __repr__(self):
        return f"RingMatrix({self.ring!r}, {self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# residue-field linear algebra on code matrices (lists of lists of ints)

def field_row_reduce(field, rows):
    """Row echelon form; returns (echelon rows, transform U, pivot cols)
    with U * input == echelon."""
    m = len(rows)
    work = [list(r) for r in rows]
    n = len(work[0]) if work else 0
    trans = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        trans[r], trans[pivot] = trans[pivot], trans[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, x) for x in work[r]]
        trans[r] = [field.mul(inv, x) for x in trans[r]]
        for i in range(m):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(work[i], work[r])]
                trans[i] = [field.sub(x, field.mul(f, y))
                            for x, y in zip(trans[i], trans[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return work, trans, pivots


def field_rank(field, rows):
    _, _, pivots = field_row_reduce(field, rows)
    return len(pivots)


def field_left_kernel(field, rows):
    """Basis of {x : x * rows == 0}."""
    work, trans, pivots = field_row_reduce(field, rows)
    rank = len(pivots)
    return trans[rank:]


def field_solve_left(field, rows, target):
    """One x with x * rows == target, or None."""
    m = len(rows)
    n = len(rows[0]) if rows else len(target)
    # Gaussian solve of the transposed system rows^T * x^T = target^T
    a = [[rows[i][j] for i in range(m)] + [target[j]] for j in range(n)]
    red, _, piv = field_row_reduce(field, a)
    x = [0] * m
    for row_idx, c in enumerate(piv):
        if c == m:  # pivot in the augmented column: inconsistent
            return None
        x[c] = red[row_idx][m]
    # rows below rank must have zero rhs
    for row in red[len(piv):]:
        if row[m]:
            return None
    return x


def iter_field_vectors(field, dim):
    return product(field.elements(), repeat=dim)


def iter_span(field, basis, include_zero=False):
    """All vectors in the span of `basis` (list of row vectors)."""
    d = len(basis)
    m = len(basis[0]) if basis else 0
    for coeffs in product(field.elements(), repeat=d):
        if not include_zero and all(c == 0 for c in coeffs):
            continue
        vec = [0] * m
        for c, brow in zip(coeffs, basis):
            if c:
                for j in range(m):
                    if brow[j]:
                        vec[j] = field.add(vec[j], field.mul(c, brow[j]))
        yield vec


# ---------------------------------------------------------------------------
# diagonal reduction and the module invariants

def diagonal_reduction(A):
    """(exponents, L, R) with L*A*R = diag(gamma^e1, ..., gamma^et, 0...),
    L and R invertible, e1 <= ... <= et < nu."""
    ring = A.ring
    nu = ring.nu
    m, n = A.rows, A.cols
    W = [list(row) for row in A.data]
    L = [list(row) for row in RingMatrix.identity(ring, m).data]
    R = [list(row) for row in RingMatrix.identity(ring, n).data]
    exps = []
    k = 0
    while k < min(m, n):
        best = None
        for j in range(k, n):
            for i in range(k, m):
                v = ring.valuation(W[i][j])
                if v < nu and (best is None or v < best[0]):
                    best = (v, j, i)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        e, pj, pi = best
        if pi != k:
            W[k], W[pi] = W[pi], W[k]
            L[k], L[pi] = L[pi], L[k]
        if pj != k:
            for row in W:
                row[k], row[pj] = row[pj], row[k]
            for row in R:
                row[k], row[pj] = row[pj], row[k]
        inv = ring.invert_unit(ring.unit_part(W[k][k]))
        W[k] = [ring.mul(inv, x) for x in W[k]]
        L[k] = [ring.mul(inv, x) for x in L[k]]
        # clear the pivot column with row operations
        for i in range(m):
            if i != k and W[i][k] != ring.zero:
                f = ring.shift_down(W[i][k], e)
                W[i] = [ring.sub(x, ring.mul(f, y))
                        for x, y in zip(W[i], W[k])]
                L[i] = [ring.sub(x, ring.mul(f, y))
                        for x, y in zip(L[i], L[k])]
        # clear the pivot row with column operations
        for j in range(n):
            if j != k and W[k][j] != ring.zero:
                f = ring.shift_down(W[k][j], e)
                for row in W:
                    row[j] = ring.sub(row[j], ring.mul(f, row[k]))
                for row in R:
                    row[j] = ring.sub(row[j], ring.mul(f, row[k]))
        exps.append(e)
        k += 1
    return (tuple(exps), RingMatrix(ring, L, cols=m),
            RingMatrix(ring, R, cols=n))


def shape_of(A):
    """nu-shape (mu_1, ..., mu_nu) of the row module of A."""
    exps, _, _ = diagonal_reduction(A)
    nu = A.ring.nu
    return tuple(sum(1 for e in exps if e <= i) for i in range(nu))


def gamma_dimension(A):
    exps, _, _ = diagonal_reduction(A)
    return sum(A.ring.nu - e for e in exps)


def parameters_of(A):
    """(k_0, ..., k_{nu-1}) with k_i = mu_{i+1} - mu_i."""
    mu = (0,) + shape_of(A)
    return tuple(mu[i + 1] - mu[i] for i in range(A.ring.nu))


# ---------------------------------------------------------------------------
# gamma-span membership and independence

def module_solve_left(A, target):
    """Whether some u in R^m solves u*A == target (full ring coefficients)."""
    ring = A.ring
    exps, _, R = diagonal_reduction(A)
    # u*A = target  <=>  y*D = target*R with y = u*L^{-1} unconstrained
    for j in range(A.cols):
        acc = ring.zero
        for i in range(A.cols):
            acc = ring.add(acc, ring.mul(target[i], R.entry(i, j)))
        if j < len(exps):
            if ring.valuation(acc) < exps[j]:
                return False
        elif acc != ring.zero:
            return False
    return True


def _is_layer_closed(A):
    """Whether gamma times each row is zero or literally a later row.

    Matrices stacked from gamma-layers have this property; it certifies
    the gamma-generator-sequence condition without any search."""
    ring = A.ring
    gamma = ring.gamma
    for i in range(A.rows):
        g = [ring.mul(gamma, e) for e in A.data[i]]
        if all(e == ring.zero for e in g):
            continue
        if not any(list(A.data[j]) == g for j in range(i + 1, A.rows)):
            return False
    return True


def gamma_span_solve(A, target, budget=DEFAULT_ORACLE_BUDGET):
    """Coefficients t in T^m with sum(t_i * row_i) == target, or None.

    Solves the projected system over the residue field, then enumerates the
    affine solution coset, lifting each candidate through T and checking
    exactly over the ring.  Cost q^(kernel dim)."""
    ring = A.ring
    field = ring.residue
    m = A.rows
    if m == 0:
        z = ring.zero
        return () if all(e == z for e in target) else None
    # trivial hits that need no search
    if all(e == ring.zero for e in target):
        return (ring.zero,) * m
    tlist = list(target)
    for i, row in enumerate(A.data):
        if list(row) == tlist:
            return tuple(ring.one if j == i else ring.zero for j in range(m))
    rows = A.residue_rows()
    tvec = [ring.project(e) for e in target]
    part = field_solve_left(field, rows, tvec)
    if part is None:
        return None
    kernel = field_left_kernel(field, rows)
    if field.q ** len(kernel) > budget:
        # membership in the full module span is necessary for membership in
        # the T-span; a cheap reduction settles clear negatives exactly
        if not module_solve_left(A, target):
            return None
        raise BudgetExceeded(
            f"span membership needs {field.q}^{len(kernel)} candidates")
    lift = ring.lift
    zero = ring.zero

    def check(codes):
        acc = [zero] * A.cols
        ts = []
        for c, row in zip(codes, A.data):
            t = lift(c)
            ts.append(t)
            if t != zero:
                for j, e in enumerate(row):
                    acc[j] = ring.add(acc[j], ring.mul(t, e))
        return tuple(ts) if list(acc) == list(target) else None

    got = check(part)
    if got is not None:
        return got
    for kvec in iter_span(field, kernel):
        cand = [field.add(a, b) for a, b in zip(part, kvec)]
        got = check(cand)
        if got is not None:
            return got
    return None


def is_gamma_generator_sequence(A, budget=DEFAULT_ORACLE_BUDGET):
    """True iff the ordered rows satisfy: gamma*row_i is a T-combination of
    the later rows, and gamma*last == 0."""
    ring = A.ring
    if A.rows == 0:
        return True
    gamma = ring.gamma
    last = [ring.mul(gamma, e) for e in A.data[-1]]
    if any(e != ring.zero for e in last):
        return False
    for i in range(A.rows - 1):
        target = [ring.mul(gamma, e) for e in A.data[i]]
        tail = RingMatrix(ring, A.data[i + 1:], cols=A.cols)
        if gamma_span_solve(tail, target, budget=budget) is None:
            return False
    return True


def is_gamma_linearly_independent(A, method=ORACLE,
                                  budget=DEFAULT_ORACLE_BUDGET,
                                  check_precondition=True):
    """No nontrivial T-combination of the rows is zero.

    ORACLE enumerates the lifted left kernel of the projection (complete
    for arbitrary row sets).  SHAPE_FAST compares the gamma-dimension with
    the row count and is only valid on gamma-generator sequences."""
    ring = A.ring
    if A.rows == 0:
        return True
    if method == SHAPE_FAST:
        if check_precondition and not is_gamma_generator_sequence(A, budget):
            raise MethodPreconditionViolated(
                "shape-fast independence needs a gamma-generator sequence")
        if A.rows == ring.nu * A.cols:
            # full gamma-dimension forces every diagonal exponent to be 0,
            # which is exactly full column rank of the projection
            return field_rank(ring.residue, A.residue_rows()) == A.cols
        return gamma_dimension(A) == A.rows
    if method != ORACLE:
        raise ValueError(f"unknown method {method!r}")
    field = ring.residue
    kernel = field_left_kernel(field, A.residue_rows())
    if not kernel:
        return True
    if _is_layer_closed(A):
        # the rows form a gamma-generator sequence by inspection, so the
        # shape criterion decides independence without enumeration
        return gamma_dimension(A) == A.rows
    if field.q ** len(kernel) > budget:
        raise BudgetExceeded(
            f"oracle needs {field.q}^{len(kernel)} kernel lifts")
    zero = ring.zero
    for cand in iter_span(field, kernel):
        acc = [zero] * A.cols
        nontrivial = False
        for c, row in zip(cand, A.data):
            t = ring.lift(c)
            if t != zero:
                nontrivial = True
                for j, e in enumerate(row):
                    acc[j] = ring.add(acc[j], ring.mul(t, e))
        if nontrivial and all(e == zero for e in acc):
            return False
    return True


# ---------------------------------------------------------------------------
# gamma-bases and standard forms

def gamma_basis(A):
    """A gamma-basis of the row module of A, ordered as a gamma-generator
    sequence (layer b holds gamma^(b - e_j) * generator_j for e_j <= b)."""
    ring = A.ring
    exps, L, _ = diagonal_reduction(A)
    LA = L.matmul(A)
    out = []
    for b in range(ring.nu):
        for j, e in enumerate(exps):
            if e <= b:
                g = ring.gamma_power(b - e)
                out.append([ring.mul(g, x) for x in LA.data[j]])
    return RingMatrix(ring, out, cols=A.cols)


def standard_form(A):
    """(S, perm): S is left-equivalent to A up to the column permutation
    `perm` and matches the block-triangular pattern with diagonal blocks
    gamma^i * I_{k_i}.  Output column j is input column perm[j]."""
    ring = A.ring
    if A.is_zero():
        raise ZeroMatrix("standard form undefined for the zero matrix")
    nu = ring.nu
    W = [list(row) for row in A.data]
    m, n = A.rows, A.cols
    free_rows = list(range(m))
    free_cols = list(range(n))
    placed = []        # (row vector, level, pivot col)
    while free_rows and free_cols:
        best = None
        for j in free_cols:
            for i in free_rows:
                v = ring.valuation(W[i][j])
                if v < nu and (best is None or v < best[0]):
                    best = (v, j, i)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        e, pj, pi = best
        inv = ring.invert_unit(ring.unit_part(W[pi][pj]))
        W[pi] = [ring.mul(inv, x) for x in W[pi]]
        # clear the pivot column from every other candidate row and from
        # already-placed rows of the same level (keeps the identity blocks)
        others = [i for i in free_rows if i != pi]
        for i in others:
            if W[i][pj] != ring.zero:
                f = ring.shift_down(W[i][pj], e)
                W[i] = [ring.sub(x, ring.mul(f, y))
                        for x, y in zip(W[i], W[pi])]
        for rec in placed:
            if rec[1] == e and rec[0][pj] != ring.zero:
                f = ring.shift_down(rec[0][pj], e)
                rec[0][:] = [ring.sub(x, ring.mul(f, y))
                             for x, y in zip(rec[0], W[pi])]
        placed.append([W[pi], e, pj])
        free_rows.remove(pi)
        free_cols.remove(pj)
    perm = tuple(rec[2] for rec in placed) + tuple(free_cols)
    S = RingMatrix(ring, [[rec[0][j] for j in perm] for rec in placed],
                   cols=n)
    return S, perm


def standard_form_levels(A):
    """Standard form plus the level of each row (internal helper)."""
    ring = A.ring
    S, perm = standard_form(A)
    levels = tuple(ring.valuation(S.data[i][i]) for i in range(S.rows))
    return S, perm, levels


def gamma_standard_form(A):
    """(G, perm): gamma-basis of the row module of the column-permuted A,
    arranged in the layered gamma-standard-form pattern."""
    ring = A.ring
    S, perm, levels = standard_form_levels(A)
    out = []
    for layer in range(ring.nu):
        for i, e in enumerate(levels):
            if e <= layer:
                g = ring.gamma_power(layer - e)
                v = [ring.mul(g, x) for x in S.data[i]]
                # canonical reduction: clear the pivot columns of the
                # higher-level rows of this layer
                for j in range(i + 1, S.rows):
                    ej = levels[j]
                    if e < ej <= layer and v[j] != ring.zero:
                        f = ring.shift_down(v[j], ej)
                        v = [ring.sub(x, ring.mul(f, y))
                             for x, y in zip(v, S.data[j])]
                out.append(v)
    return RingMatrix(ring, out, cols=A.cols), perm


# ---------------------------------------------------------------------------
# determinants

def determinant(A):
    """Exact determinant via valuation-pivoted elimination (divisions only
    by units)."""
    ring = A.ring
    if A.rows != A.cols:
        raise NotSquare("determinant needs a square matrix")
    n = A.rows
    if n == 0:
        return ring.one
    W = [list(row) for row in A.data]
    det = ring.one
    for k in range(n):
        best = None
        for i in range(k, n):
            v = ring.valuation(W[i][k])
            if v < ring.nu and (best is None or v < best[0]):
                best = (v, i)
                if v == 0:
                    break
        if best is None:
            return ring.zero
        e, pi = best
        if pi != k:
            W[k], W[pi] = W[pi], W[k]
            det = ring.neg(det)
        pivot = W[k][k]
        det = ring.mul(det, pivot)
        inv_unit = ring.invert_unit(ring.unit_part(pivot))
        for i in range(k + 1, n):
            if W[i][k] != ring.zero:
                # factor = entry / pivot, valid because val(entry) >= e
                f = ring.mul(ring.shift_down(W[i][k], e), inv_unit)
                W[i] = [ring.sub(x, ring.mul(f, y))
                        for x, y in zip(W[i], W[k])]
    return det


def residue_determinant(A):
    """det of the projection, in the residue field."""
    ring = A.ring
    if A.rows != A.cols:
        raise NotSquare("determinant needs a square matrix")
    field = ring.residue
    n = A.rows
    W = A.residue_rows()
    det = field.one
    for k in range(n):
        pivot = next((i for i in range(k, n) if W[i][k]), None)
        if pivot is None:
            return field.zero
        if pivot != k:
            W[k], W[pivot] = W[pivot], W[k]
            det = field.neg(det)
        det = field.mul(det, W[k][k])
        inv = field.inv(W[k][k])
        for i in range(k + 1, n):
            if W[i][k]:
                f = field.mul(W[i][k], inv)
                W[i] = [field.sub(x, field.mul(f, y))
                        for x, y in zip(W[i], W[k])]
    return det


def is_unit_determinant(A):
    """Unit-determinant test; the ring path and the residue-field path are
    both evaluated and must agree."""
    ring = A.ring
    via_residue = residue_determinant(A) != ring.residue.zero
    via_ring = ring.valuation(determinant(A)) == 0
    assert via_ring == via_residue, "determinant paths disagree"
    return via_ring
