"""Exact dense linear algebra over Q(i).

Rank, kernel and solve use fraction-free (Bareiss) elimination after
clearing row denominators, with deterministic pivoting: the pivot column
is the leftmost one with a nonzero entry at or below the current row, and
the pivot row is the topmost such row.  Eigen-splitting computes the
characteristic polynomial exactly (Faddeev-LeVerrier) and finds roots by
exhaustive search over Gaussian-integer divisors; it fails loudly when
the polynomial has an irreducible factor over Q(i).  Hermitian inertia is
computed by exact congruence reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .scalars import GaussianRational, ONE, ZERO

Vector = list  # list[GaussianRational]


class NonHermitianError(ValueError):
    pass


class NonSplitError(ValueError):
    """Characteristic polynomial has no further root in Q(i)."""

    def __init__(self, message: str, residual_degree: int = 0):
        super().__init__(message)
        self.residual_degree = residual_degree


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def as_scalar(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


def vector(entries) -> Vector:
    return [as_scalar(x) for x in entries]


def vec_is_zero(v: Vector) -> bool:
    return all(x.is_zero() for x in v)


def vec_add(v: Vector, w: Vector) -> Vector:
    return [a + b for a, b in zip(v, w, strict=True)]


def vec_sub(v: Vector, w: Vector) -> Vector:
    return [a - b for a, b in zip(v, w, strict=True)]


def vec_scale(c, v: Vector) -> Vector:
    c = as_scalar(c)
    return [c * a for a in v]


def vec_conj(v: Vector) -> Vector:
    return [a.conjugate() for a in v]


def vec_dot(v: Vector, w: Vector) -> GaussianRational:
    """Bilinear (not Hermitian) pairing sum_i v_i w_i."""
    acc = ZERO
    for a, b in zip(v, w, strict=True):
        acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Dense matrix of Gaussian rationals, treated as immutable."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data):
        if len(data) != rows:
            raise ValueError("row count mismatch")
        self._data = [[as_scalar(x) for x in row] for row in data]
        for row in self._data:
            if len(row) != cols:
                raise ValueError("column count mismatch")
        self.rows = rows
        self.cols = cols

    @classmethod
    def from_rows(cls, data) -> "ExactMatrix":
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, idx) -> GaussianRational:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return list(self._data[i])

    def col(self, j: int) -> Vector:
        return [self._data[i][j] for i in range(self.rows)]

    def row_list(self):
        return [list(r) for r in self._data]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows,
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def conj(self) -> "ExactMatrix":
        return ExactMatrix(
            self.rows, self.cols, [[x.conjugate() for x in row] for row in self._data]
        )

    def conj_transpose(self) -> "ExactMatrix":
        return self.transpose().conj()

    def is_hermitian(self) -> bool:
        return self.rows == self.cols and self == self.conj_transpose()

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows, self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows, self.cols,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
        )

    def scale(self, c) -> "ExactMatrix":
        c = as_scalar(c)
        return ExactMatrix(
            self.rows, self.cols, [[c * x for x in row] for row in self._data]
        )

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            ri = self._data[i]
            for k in range(self.cols):
                a = ri[k]
                if a.is_zero():
                    continue
                rk = other._data[k]
                oi = out[i]
                for j in range(other.cols):
                    b = rk[j]
                    if not b.is_zero():
                        oi[j] = oi[j] + a * b
        return ExactMatrix(self.rows, other.cols, out)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for j, x in enumerate(v):
                if not x.is_zero():
                    acc = acc + self._data[i][j] * x
            out.append(acc)
        return out

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self._data[i][i]
        return acc

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                a == b for r1, r2 in zip(self._data, other._data) for a, b in zip(r1, r2)
            )
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self._data)))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data)
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _clear_row_denominators(rows):
    """Scale each row by a positive integer so entries are Gaussian integers."""
    out = []
    for row in rows:
        mult = 1
        for x in row:
            for d in (x.re.denominator, x.im.denominator):
                mult = mult * d // gcd(mult, d)
        if mult == 1:
            out.append(list(row))
        else:
            out.append([x * mult for x in row])
    return out


def _bareiss_echelon(rows, cols):
    """Fraction-free forward elimination.

    Returns (echelon_rows, pivot_cols).  Rows are modified copies of the
    input; pivoting takes the leftmost column with a nonzero entry at or
    below the current row, topmost row first.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    piv_cols = []
    prev = ONE
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, nrows):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            ar = a[r]
            aic = ai[c]
            for j in range(c + 1, cols):
                ai[j] = (piv * ai[j] - aic * ar[j]) / prev
            ai[c] = ZERO
        prev = piv
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return a, piv_cols


def rank_kernel(M: ExactMatrix):
    """Exact rank and a kernel basis of M, so rank + len(kernel) == cols.

    Kernel vectors are exact: M v == 0 for every returned v.
    """
    rows = _clear_row_denominators(M.row_list())
    echelon, piv_cols = _bareiss_echelon(rows, M.cols)
    rank = len(piv_cols)
    free_cols = [c for c in range(M.cols) if c not in piv_cols]
    kernel = []
    for f in free_cols:
        v = [ZERO] * M.cols
        v[f] = ONE
        # back substitution over the echelon rows
        for r in range(rank - 1, -1, -1):
            c = piv_cols[r]
            acc = ZERO
            for j in range(c + 1, M.cols):
                if not v[j].is_zero():
                    acc = acc + echelon[r][j] * v[j]
            v[c] = -acc / echelon[r][c]
        kernel.append(v)
    return rank, kernel


def rank(M: ExactMatrix) -> int:
    return rank_kernel(M)[0]


def solve_linear(M: ExactMatrix, b: Vector):
    """Some exact solution x of M x = b, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != M.rows:
        raise ValueError("rhs length mismatch")
    aug = [row + [as_scalar(x)] for row, x in zip(M.row_list(), b)]
    aug = _clear_row_denominators(aug)
    echelon, piv_cols = _bareiss_echelon(aug, M.cols + 1)
    if piv_cols and piv_cols[-1] == M.cols:
        return None  # pivot in the augmented column: inconsistent
    rank_ = len(piv_cols)
    for r in range(rank_, len(echelon)):
        if not echelon[r][M.cols].is_zero():
            return None
    x = [ZERO] * M.cols
    for r in range(rank_ - 1, -1, -1):
        c = piv_cols[r]
        acc = echelon[r][M.cols]
        for j in range(c + 1, M.cols):
            if not x[j].is_zero():
                acc = acc - echelon[r][j] * x[j]
        x[c] = acc / echelon[r][c]
    return x


def rref(M: ExactMatrix):
    """Reduced row echelon form and pivot columns (Gauss-Jordan, exact).

    The RREF with zero rows dropped is the canonical representation of
    the row space: equal row spaces give identical matrices.
    """
    a = M.row_list()
    nrows, ncols = M.rows, M.cols
    piv_cols = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c].inverse()
        a[r] = [inv * x for x in a[r]]
        for i in range(nrows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    nonzero = [row for row in a if not vec_is_zero(row)]
    return ExactMatrix.from_rows(nonzero) if nonzero else ExactMatrix.zero(0, ncols), tuple(piv_cols)


# ---------------------------------------------------------------------------
# characteristic polynomial and eigen-splitting
# ---------------------------------------------------------------------------


def char_poly(M: ExactMatrix) -> list:
    """Monic characteristic polynomial det(tI - M), coefficients low to high.

    Computed by the Faddeev-LeVerrier recursion; all divisions are by
    integers and exact.
    """
    if M.rows != M.cols:
        raise ValueError("characteristic polynomial of non-square matrix")
    n = M.rows
    coeffs = [ZERO] * n + [ONE]
    Mk = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M.matmul(Mk)
        c = -(Mk.trace() / k)
        coeffs[n - k] = c
        if k < n:
            Mk = Mk + ExactMatrix.identity(n).scale(c)
    return coeffs


def poly_eval(coeffs, x: GaussianRational) -> GaussianRational:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deflate(coeffs, root):
    """Divide a polynomial by (t - root); remainder must be zero."""
    n = len(coeffs) - 1
    out = [ZERO] * n
    carry = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = carry
        carry = coeffs[k] + carry * root
    if not carry.is_zero():
        raise ArithmeticError("deflation by a non-root")
    return out


_DIVISOR_NORM_LIMIT = 10**12


def _integer_divisors(n: int):
    n = abs(n)
    divs = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            if d != n // d:
                divs.append(n // d)
        d += 1
    return sorted(divs)


def _gaussian_divisors(z: GaussianRational):
    """All Gaussian integers dividing z (including unit multiples)."""
    if not z.is_gaussian_integer():
        raise ValueError("divisor enumeration needs a Gaussian integer")
    nz = int(z.norm())
    if nz == 0:
        raise ValueError("divisors of zero are unbounded")
    if nz > _DIVISOR_NORM_LIMIT:
        raise NonSplitError(f"coefficient norm {nz} too large for divisor search")
    found = set()
    for m in _integer_divisors(nz):
        for x in range(isqrt(m) + 1):
            y2 = m - x * x
            y = isqrt(y2)
            if y * y != y2:
                continue
            for cand in {(x, y), (x, -y), (-x, y), (-x, -y)}:
                d = GaussianRational(cand[0], cand[1])
                if d.is_zero() or cand in found:
                    continue
                q = z / d
                if q.is_gaussian_integer():
                    found.add(cand)
    return [GaussianRational(a, b) for a, b in sorted(found)]


def _scale_to_gaussian_integers(coeffs):
    mult = 1
    for c in coeffs:
        for d in (c.re.denominator, c.im.denominator):
            mult = mult * d // gcd(mult, d)
    return [c * mult for c in coeffs]


def poly_linear_roots(coeffs):
    """All roots in Q(i) with multiplicity; NonSplitError if some factor
    has no root there (rational-root search over Gaussian-integer
    divisors after clearing denominators)."""
    work = list(coeffs)
    while len(work) > 1 and work[-1].is_zero():
        work.pop()
    if len(work) <= 1:
        raise ValueError("constant polynomial")
    roots = []
    # pull out the t^k factor first
    while work[0].is_zero():
        roots.append(ZERO)
        work = work[1:]
    while len(work) > 1:
        if len(work) == 2:  # linear: a0 + a1 t
            roots.append(-work[0] / work[1])
            break
        scaled = _scale_to_gaussian_integers(work)
        numerators = _gaussian_divisors(scaled[0])
        denominators = _gaussian_divisors(scaled[-1])
        root = None
        for s in denominators:
            # unit multiples of s only rescale the candidate; numerators
            # already run over all associates
            for r in numerators:
                cand = r / s
                if poly_eval(work, cand).is_zero():
                    root = cand
                    break
            if root is not None:
                break
        if root is None:
            raise NonSplitError(
                "polynomial factor without a root in Q(i)", residual_degree=len(work) - 1
            )
        roots.append(root)
        work = _poly_deflate(work, root)
    return roots


@dataclass(frozen=True)
class EigenSplit:
    """Distinct eigenvalues with exact eigenspaces; diagonalizable iff the
    eigenspace dimensions add up to the matrix size."""

    pairs: tuple  # ((eigenvalue, (vectors...)), ...) sorted by eigenvalue
    diagonalizable: bool


def split_eigen(M: ExactMatrix) -> EigenSplit:
    if M.rows != M.cols:
        raise ValueError("split_eigen needs a square matrix")
    n = M.rows
    if n == 0:
        return EigenSplit(pairs=(), diagonalizable=True)
    roots = poly_linear_roots(char_poly(M))
    distinct = sorted(set(roots), key=lambda z: z.sort_key())
    pairs = []
    total = 0
    for lam in distinct:
        shifted = M - ExactMatrix.identity(n).scale(lam)
        _, kernel = rank_kernel(shifted)
        total += len(kernel)
        pairs.append((lam, tuple(tuple(v) for v in kernel)))
    return EigenSplit(pairs=tuple(pairs), diagonalizable=total == n)


# ---------------------------------------------------------------------------
# Hermitian inertia
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dimension(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero

    def swapped(self) -> "Inertia":
        return Inertia(self.n_neg, self.n_pos, self.n_zero)

    def is_mixed(self) -> bool:
        return self.n_pos >= 1 and self.n_neg >= 1

    def as_tuple(self):
        return (self.n_pos, self.n_neg, self.n_zero)


def hermitian_inertia(H: ExactMatrix) -> Inertia:
    """Eigenvalue signs of an exactly Hermitian matrix, by congruence.

    Pivots on a nonzero diagonal entry when one exists; otherwise a
    nonzero off-diagonal pair gives a hyperbolic 2x2 block contributing
    (1, 1, 0).  Congruence (Schur complement) preserves inertia.
    """
    if not H.is_hermitian():
        raise NonHermitianError("matrix is not exactly Hermitian")
    a = H.row_list()
    n = H.rows
    n_pos = n_neg = n_zero = 0
    live = list(range(n))
    while live:
        diag_idx = None
        for k in live:
            if not a[k][k].is_zero():
                diag_idx = k
                break
        if diag_idx is not None:
            k = diag_idx
            d = a[k][k]
            if d.re > 0:
                n_pos += 1
            else:
                n_neg += 1
            live.remove(k)
            for i in live:
                f = a[i][k] / d
                for j in live:
                    a[i][j] = a[i][j] - f * a[k][j]
            for i in live:
                a[i][k] = ZERO
                a[k][i] = ZERO
            continue
        off = None
        for idx, j in enumerate(live):
            for k in live[idx + 1:]:
                if not a[j][k].is_zero():
                    off = (j, k)
                    break
            if off:
                break
        if off is None:
            n_zero += len(live)
            break
        j, k = off
        h = a[j][k]
        n_pos += 1
        n_neg += 1
        live.remove(j)
        live.remove(k)
        hbar = h.conjugate()
        for i in live:
            bij, bik = a[i][j], a[i][k]
            for l in live:
                a[i][l] = a[i][l] - bik * a[j][l] / h - bij * a[k][l] / hbar
        for i in live:
            a[i][j] = a[i][k] = ZERO
            a[j][i] = a[k][i] = ZERO
    return Inertia(n_pos, n_neg, n_zero)
