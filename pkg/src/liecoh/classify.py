"""Structure classification, characteristic covectors and the Levi form.

A subalgebra h of the complexified algebra g defines an elliptic /
complex / CR / essentially real structure according to how h sits
against its conjugate.  The characteristic covectors are the real
covectors annihilating h; at such a covector xi the Levi form is the
Hermitian matrix (1/2i) xi([Z_a, conj(Z_b)]) on a basis of h, and its
inertia feeds the mixed-signature hypocomplexity test.  Left invariance
makes evaluation at the identity sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .algebra import AlgebraError, LieAlgebra, Subalgebra
from .linalg import (
    ExactMatrix,
    Inertia,
    as_scalar,
    hermitian_inertia,
    rank_kernel,
    rref,
    vec_conj,
    vec_dot,
    vec_is_zero,
)
from .scalars import GaussianRational, ZERO, format_scalar

VERDICT_ELLIPTIC = "elliptic_hence_hypocomplex"
VERDICT_BCT = "hypocomplex_by_bct"
VERDICT_INCONCLUSIVE = "inconclusive"


class NotCharacteristicError(AlgebraError):
    pass


@dataclass(frozen=True)
class ClassificationReport:
    """Flags and dimensions classifying h against its conjugate.

    complex_structure implies elliptic and cr; essentially_real means
    h equals its conjugate; elliptic means h + conj(h) is everything.
    """

    elliptic: bool
    complex_structure: bool
    cr: bool
    essentially_real: bool
    dim_h: int
    dim_conj: int
    dim_sum: int
    dim_intersection: int
    ambient_dim: int

    def to_json_dict(self) -> dict:
        return {
            "flags": {
                "elliptic": self.elliptic,
                "complex": self.complex_structure,
                "cr": self.cr,
                "essentially_real": self.essentially_real,
            },
            "dims": {
                "h": self.dim_h,
                "h_conj": self.dim_conj,
                "h_plus_conj": self.dim_sum,
                "h_cap_conj": self.dim_intersection,
                "ambient": self.ambient_dim,
            },
        }


def classify_structure(g: LieAlgebra, h: Subalgebra) -> ClassificationReport:
    if h.parent != g:
        raise AlgebraError("subalgebra does not belong to the given algebra")
    hbar = h.conj()
    total = h.sum_with(hbar)
    inter = h.intersect(hbar)
    n = g.dim
    elliptic = total.dim == n
    cr = inter.dim == 0
    return ClassificationReport(
        elliptic=elliptic,
        complex_structure=elliptic and cr,
        cr=cr,
        essentially_real=h == hbar,
        dim_h=h.dim,
        dim_conj=hbar.dim,
        dim_sum=total.dim,
        dim_intersection=inter.dim,
        ambient_dim=n,
    )


def characteristic_space(g: LieAlgebra, h: Subalgebra):
    """Basis of the real covectors annihilating h (equivalently h + conj h).

    Covectors are returned as coordinate vectors in the dual of the real
    basis, in reduced echelon form; the list is empty exactly when the
    structure is elliptic.
    """
    total = h.sum_with(h.conj())
    if total.dim == g.dim:
        return []
    rows = []
    for v in total.vectors():
        rows.append([as_scalar(x.re) for x in v])
        rows.append([as_scalar(x.im) for x in v])
    if not rows:
        return [list(v) for v in ExactMatrix.identity(g.dim).row_list()]
    _, kernel = rank_kernel(ExactMatrix.from_rows(rows))
    if not kernel:
        return []
    canon, _ = rref(ExactMatrix.from_rows(kernel))
    return canon.row_list()


@dataclass(frozen=True)
class LeviForm:
    """Hermitian form (1/2i) xi([Z_a, conj(Z_b)]) on a basis Z of h."""

    xi: tuple
    basis: tuple
    matrix: ExactMatrix

    def inertia(self) -> Inertia:
        return hermitian_inertia(self.matrix)


def levi_form(g: LieAlgebra, h: Subalgebra, xi, basis=None) -> LeviForm:
    """Levi form of h at the nonzero characteristic covector xi.

    `basis` defaults to the canonical echelon basis of h; an explicit
    basis (rows spanning h) may be passed to control the matrix ordering.
    """
    if h.parent != g:
        raise AlgebraError("subalgebra does not belong to the given algebra")
    xi = [as_scalar(x) for x in xi]
    if len(xi) != g.dim:
        raise AlgebraError("covector length mismatch")
    if vec_is_zero(xi):
        raise NotCharacteristicError("characteristic covector must be nonzero")
    if any(not x.is_real() for x in xi):
        raise NotCharacteristicError("characteristic covectors are real")
    for v in h.vectors():
        if not vec_dot(xi, v).is_zero():
            raise NotCharacteristicError("covector does not annihilate the subalgebra")
    if basis is None:
        rows = h.vectors()
    else:
        rows = [[as_scalar(x) for x in v] for v in basis]
        span_check = Subalgebra.span(g, rows)
        if len(rows) != h.dim or span_check != h:
            raise AlgebraError("explicit basis does not span the subalgebra")
    half_i_inv = GaussianRational(0, Fraction(-1, 2))  # 1/(2i)
    entries = []
    for za in rows:
        row = []
        for zb in rows:
            w = g.bracket(za, vec_conj(zb))
            row.append(half_i_inv * vec_dot(xi, w))
        entries.append(row)
    matrix = ExactMatrix.from_rows(entries)
    if not matrix.is_hermitian():
        raise AssertionError("Levi form failed the exact Hermitian check")
    return LeviForm(xi=tuple(xi), basis=tuple(tuple(v) for v in rows), matrix=matrix)


@dataclass(frozen=True)
class BctSample:
    coeffs: tuple  # integer coefficients over the characteristic basis
    covector: tuple
    inertia: Inertia

    def to_json_dict(self) -> dict:
        return {
            "coefficients": list(self.coeffs),
            "covector": [format_scalar(x) for x in self.covector],
            "inertia": list(self.inertia.as_tuple()),
        }


@dataclass(frozen=True)
class BctReport:
    """Outcome of the mixed-signature (one positive and one negative
    eigenvalue) hypocomplexity test.

    Exact verdicts are only possible when the characteristic space has
    dimension <= 1; in higher dimension the report carries inertia
    evidence on a deterministic rational sample grid and is always
    inconclusive (sampling cannot prove a universal claim).
    """

    verdict: str
    characteristic_dim: int
    samples: tuple
    notes: tuple

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "characteristic_dim": self.characteristic_dim,
            "samples": [s.to_json_dict() for s in self.samples],
            "notes": list(self.notes),
        }


def _primitive_grid(dim: int, radius: int):
    """Integer tuples with entries in [-radius, radius], deduplicated up to
    positive scaling, lexicographically ordered."""
    seen = set()
    for coeffs in product(range(-radius, radius + 1), repeat=dim):
        if all(c == 0 for c in coeffs):
            continue
        g = 0
        for c in coeffs:
            g = gcd(g, abs(c))
        primitive = tuple(c // g for c in coeffs)
        seen.add(primitive)
    return sorted(seen)


def bct_check(g: LieAlgebra, h: Subalgebra, grid_radius: int = 2) -> BctReport:
    char = characteristic_space(g, h)
    d = len(char)
    if d == 0:
        return BctReport(
            verdict=VERDICT_ELLIPTIC,
            characteristic_dim=0,
            samples=(),
            notes=("characteristic set is zero: structure is elliptic, hence hypocomplex",),
        )
    if d == 1:
        xi = char[0]
        samples = []
        mixed = True
        for sign in (1, -1):
            cov = [as_scalar(sign) * x for x in xi]
            inertia = levi_form(g, h, cov).inertia()
            samples.append(BctSample(coeffs=(sign,), covector=tuple(cov), inertia=inertia))
            mixed = mixed and inertia.is_mixed()
        samples.sort(key=lambda s: s.coeffs)
        if mixed:
            return BctReport(
                verdict=VERDICT_BCT,
                characteristic_dim=1,
                samples=tuple(samples),
                notes=(
                    "Levi form has at least one positive and one negative eigenvalue "
                    "at every nonzero characteristic covector (checked at +/- the "
                    "basis covector; scaling covers the rest)",
                ),
            )
        return BctReport(
            verdict=VERDICT_INCONCLUSIVE,
            characteristic_dim=1,
            samples=tuple(samples),
            notes=(
                "mixed-signature hypothesis fails on the 1-dimensional "
                "characteristic line; the test is only sufficient, so no "
                "conclusion follows",
            ),
        )
    samples = []
    for coeffs in _primitive_grid(d, grid_radius):
        cov = [ZERO] * g.dim
        for c, basis_vec in zip(coeffs, char):
            if c:
                cov = [u + as_scalar(c) * w for u, w in zip(cov, basis_vec)]
        inertia = levi_form(g, h, cov).inertia()
        samples.append(BctSample(coeffs=tuple(coeffs), covector=tuple(cov), inertia=inertia))
    return BctReport(
        verdict=VERDICT_INCONCLUSIVE,
        characteristic_dim=d,
        samples=tuple(samples),
        notes=(
            "characteristic space has dimension >= 2: inertia evidence on a "
            "deterministic sample grid only; a universal verdict is not "
            "claimed from sampling",
        ),
    )
