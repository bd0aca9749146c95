"""Assembling H^{p,q}(G; h) from factor cohomologies.

For an elliptic h with k the intersection of h with its conjugate and an
ideal complement u (k + u = h directly), the bigraded cohomology factors
through the quotient by K = exp(k in g_R): a Kunneth convolution of the de Rham
cohomology of k with fiber cohomologies computed, via the adjoint
action, as relative cohomology H^r(h, k; Lambda^p(g/h)).  The dual
exterior power reproduces the Dolbeault numbers of the quotient on the
worked fixtures; the non-dual variant is computed alongside and any
disagreement is reported, not resolved silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import AlgebraError, ClosureError, LieAlgebra, Subalgebra
from .classify import classify_structure
from .cohomology import (
    BasisedAlgebra,
    CohomologyTable,
    GModule,
    basised,
    ce_cohomology,
    extend_to_complement,
    relative_ce_cohomology,
)
from .linalg import ExactMatrix, rank_kernel, vec_conj, vec_dot
from .scalars import ZERO


class NotEllipticError(AlgebraError):
    pass


class NoIdealComplementError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# coefficient modules
# ---------------------------------------------------------------------------


def adjoint_quotient_module(amb, u: Subalgebra, p: int, dual: bool = False) -> GModule:
    """Lambda^p of the quotient (amb / u) as a u-module via the adjoint
    action; `dual` takes the contragredient."""
    ba = basised(amb)
    u_vectors = u.vectors()
    for v in u_vectors:
        if ba.coordinates_of(v) is None:
            raise AlgebraError("u is not contained in the ambient algebra")
    witness = u.is_subalgebra()
    if witness is not None:
        raise ClosureError(witness)
    complement = extend_to_complement(u_vectors, ba.vectors)
    d = len(complement)
    if d != ba.dim - u.dim:
        raise AlgebraError("could not complete a complement of u in the ambient algebra")
    adapted = BasisedAlgebra(ba.parent, u_vectors + complement)
    dim_u = u.dim
    # base action of each u generator on the quotient, in the complement basis
    base = []
    for i in range(dim_u):
        cols = []
        for j in range(d):
            coeffs = adapted.coeffs(i, dim_u + j)
            col = [ZERO] * d
            for l, c in coeffs.items():
                if l >= dim_u:
                    col[l - dim_u] = c
            cols.append(col)
        base.append(ExactMatrix.from_rows([[cols[j][r] for j in range(d)] for r in range(d)]))
    if p < 0 or p > d:
        dim_mod = 0
    else:
        dim_mod = len(list(combinations(range(d), p)))
    subs = list(combinations(range(d), p)) if dim_mod else []
    index = {s: i for i, s in enumerate(subs)}
    actions = []
    for i in range(dim_u):
        data = [[ZERO] * dim_mod for _ in range(dim_mod)]
        A = base[i]
        for s_idx, K in enumerate(subs):
            for pos in range(p):
                for l in range(d):
                    v = A[l, K[pos]]
                    if v.is_zero():
                        continue
                    rest = K[:pos] + K[pos + 1:]
                    if l in rest:
                        continue
                    p_new = sum(1 for x in rest if x < l)
                    newK = rest[:p_new] + (l,) + rest[p_new:]
                    sign = 1 if (pos - p_new) % 2 == 0 else -1
                    data[index[newK]][s_idx] = data[index[newK]][s_idx] + v * sign
        actions.append(ExactMatrix(dim_mod, dim_mod, data))
    if dual:
        actions = [a.transpose().scale(-1) for a in actions]
    module = GModule(u, dim_mod, actions)
    witness = module.validate()
    if witness is not None:
        raise AssertionError(f"adjoint quotient action is not a homomorphism at {witness}")
    return module


# ---------------------------------------------------------------------------
# Kunneth convolution
# ---------------------------------------------------------------------------


def _as_pq_dims(table) -> dict:
    dims = table.dims if isinstance(table, CohomologyTable) else dict(table)
    out = {}
    for key, v in dims.items():
        if not isinstance(key, tuple):
            raise AlgebraError("expected (p, r)-keyed dimensions")
        out[key] = v
    return out


def _as_degree_dims(table) -> dict:
    dims = table.dims if isinstance(table, CohomologyTable) else dict(table)
    out = {}
    for key, v in dims.items():
        if isinstance(key, tuple):
            raise AlgebraError("expected degree-keyed dimensions")
        out[int(key)] = v
    return out


def kunneth_assemble(omega_table, k_table) -> CohomologyTable:
    """dims(p, q) = sum_{r+s=q} omega(p, r) * k(s)."""
    omega = _as_pq_dims(omega_table)
    k_dims = _as_degree_dims(k_table)
    dims = {}
    if omega and k_dims:
        max_p = max(p for (p, _) in omega)
        max_r = max(r for (_, r) in omega)
        max_s = max(k_dims)
        for p in range(max_p + 1):
            for q in range(max_r + max_s + 1):
                total = 0
                for r in range(q + 1):
                    total += omega.get((p, r), 0) * k_dims.get(q - r, 0)
                dims[(p, q)] = total
    return CohomologyTable(dims=dims)


# ---------------------------------------------------------------------------
# Bott fiber cohomology
# ---------------------------------------------------------------------------


def bott_dolbeault(k_alg, u_star: Subalgebra, pair_sub: Subalgebra, p: int) -> CohomologyTable:
    """H^q of the quotient complex manifold with p-form coefficients,
    computed as H^q(u_star, pair; Lambda^p(k/u_star)^*) with the adjoint
    action."""
    ba = basised(k_alg)
    for v in u_star.vectors():
        if ba.coordinates_of(v) is None:
            raise AlgebraError("u_star is not contained in the ambient algebra")
    u_base = basised(u_star)
    for v in pair_sub.vectors():
        if u_base.coordinates_of(v) is None:
            raise AlgebraError("the pair subalgebra is not contained in u_star")
    module = adjoint_quotient_module(k_alg, u_star, p, dual=True)
    return relative_ce_cohomology(u_star, pair_sub, module)


# ---------------------------------------------------------------------------
# ad-invariant products and the full assembly
# ---------------------------------------------------------------------------


def killing_form(g: LieAlgebra) -> ExactMatrix:
    """B(X, Y) = tr(ad_X ad_Y) on the real basis."""
    ads = [g.ad_matrix(g.basis_vector(j)) for j in range(g.dim)]
    data = []
    for i in range(g.dim):
        row = []
        for j in range(g.dim):
            row.append(ads[i].matmul(ads[j]).trace())
        data.append(row)
    return ExactMatrix(g.dim, g.dim, data)


def validate_ad_invariant(g: LieAlgebra, gram: ExactMatrix):
    """None when <[X,Y],Z> = -<Y,[X,Z]> on all basis triples, else witness."""
    n = g.dim
    basis = [g.basis_vector(j) for j in range(n)]

    def pair(v, w):
        return vec_dot(gram.apply(w), v)

    for i in range(n):
        for j in range(n):
            bij = g.bracket(basis[i], basis[j])
            for k in range(n):
                lhs = pair(bij, basis[k])
                rhs = -pair(basis[j], g.bracket(basis[i], basis[k]))
                if lhs != rhs:
                    return (i, j, k)
    return None


def default_inner_product(g: LieAlgebra) -> ExactMatrix:
    """Negative Killing form; raises when it is degenerate (supply a Gram
    matrix then)."""
    B = killing_form(g).scale(-1)
    r, _ = rank_kernel(B)
    if r != g.dim:
        raise NoIdealComplementError(
            "the Killing form is degenerate; supply an ad-invariant Gram matrix"
        )
    return B


def _hermitian_pairing(gram: ExactMatrix, v, w):
    """<v, w> = v^T B conj(w) for a real symmetric B."""
    return vec_dot(gram.apply(vec_conj(w)), v)


def ideal_complement(g: LieAlgebra, h: Subalgebra, k_sub: Subalgebra, gram: ExactMatrix) -> Subalgebra:
    """Orthocomplement of k inside h for the Hermitian extension of the
    ad-invariant product; verified to satisfy [h, u] in u."""
    h_rows = h.vectors()
    k_rows = k_sub.vectors()
    if not k_rows:
        u = h
    else:
        constraint = ExactMatrix.from_rows(
            [[_hermitian_pairing(gram, la, kb) for la in h_rows] for kb in k_rows]
        )
        _, kern = rank_kernel(constraint)
        vectors = []
        for coeffs in kern:
            vec = [ZERO] * g.dim
            for c, row in zip(coeffs, h_rows):
                if not c.is_zero():
                    vec = [x + c * y for x, y in zip(vec, row)]
            vectors.append(vec)
        u = Subalgebra.span(g, vectors)
    if u.dim + k_sub.dim != h.dim or k_sub.sum_with(u).dim != h.dim:
        raise NoIdealComplementError(
            "orthocomplement of k in h is not a complement (degenerate restriction)"
        )
    for a, hv in enumerate(h_rows):
        for b, uv in enumerate(u.vectors()):
            if not u.contains(g.bracket(hv, uv)):
                raise NoIdealComplementError(
                    f"orthocomplement is not an ideal in h: witness rows ({a}, {b})"
                )
    return u


@dataclass
class AssemblyReport:
    """Inputs, factor tables and the assembled H^{p,q} with consistency
    notes; `output` is the dual-coefficient variant."""

    subalgebra: Subalgebra
    k_sub: Subalgebra
    u_ideal: Subalgebra
    u_star: Subalgebra
    k_table: CohomologyTable
    fiber_dual: dict
    fiber_nondual: dict
    table_dual: CohomologyTable
    table_nondual: CohomologyTable
    output: CohomologyTable
    disagreements: list
    p_totals: dict
    riemann_comparison: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k_sub.to_json_dict(),
            "u_ideal": self.u_ideal.to_json_dict(),
            "k_betti": {str(k): v for k, v in sorted(self.k_table.dims.items())},
            "fiber_dual": {
                str(p): {str(r): v for r, v in sorted(t.dims.items())}
                for p, t in sorted(self.fiber_dual.items())
            },
            "fiber_nondual": {
                str(p): {str(r): v for r, v in sorted(t.dims.items())}
                for p, t in sorted(self.fiber_nondual.items())
            },
            "dims": self.output.to_json_dict()["dims"],
            "dims_nondual": self.table_nondual.to_json_dict()["dims"],
            "disagreements": [
                {"p": p, "q": q, "dual": a, "nondual": b} for (p, q, a, b) in self.disagreements
            ],
            "p_summed_totals": {str(q): v for q, v in sorted(self.p_totals.items())},
            "riemann_comparison": self.riemann_comparison,
            "notes": list(self.notes),
        }


def full_assembly(g: LieAlgebra, h: Subalgebra, gram: ExactMatrix | None = None) -> AssemblyReport:
    """Assemble H^{p,q}(G; h) for elliptic h on semisimple compact G.

    u_star is realized as h itself; the fiber factor in bidegree p is
    H^r(h, k; Lambda^p(g/h)) with the dual action by default, the de Rham
    factor is H^s(k).  Both dual and non-dual coefficient variants are
    assembled and compared.
    """
    report = classify_structure(g, h)
    if not report.elliptic:
        raise NotEllipticError("full assembly requires an elliptic structure")
    if gram is None:
        gram = default_inner_product(g)
    else:
        if gram.rows != g.dim or gram.cols != g.dim:
            raise AlgebraError("Gram matrix shape mismatch")
        witness = validate_ad_invariant(g, gram)
        if witness is not None:
            raise AlgebraError(f"Gram matrix is not ad-invariant: witness {witness}")
    k_sub = h.intersect(h.conj())
    u_ideal = ideal_complement(g, h, k_sub, gram)
    u_star = h
    n = h.dim
    m = g.dim - n
    k_table = ce_cohomology(k_sub, GModule.trivial(k_sub))
    fiber_dual = {}
    fiber_nondual = {}
    for p in range(m + 1):
        fiber_dual[p] = relative_ce_cohomology(
            u_star, k_sub, adjoint_quotient_module(g, u_star, p, dual=True)
        )
        fiber_nondual[p] = relative_ce_cohomology(
            u_star, k_sub, adjoint_quotient_module(g, u_star, p, dual=False)
        )

    def assemble(fibers):
        dims = {}
        for p in range(m + 1):
            fdims = fibers[p].dims
            for q in range(n + 1):
                total = 0
                for r in range(q + 1):
                    total += fdims.get(r, 0) * k_table.dims.get(q - r, 0)
                dims[(p, q)] = total
        return CohomologyTable(dims=dims)

    table_dual = assemble(fiber_dual)
    table_nondual = assemble(fiber_nondual)
    disagreements = [
        (p, q, table_dual.dims[(p, q)], table_nondual.dims[(p, q)])
        for (p, q) in sorted(table_dual.dims)
        if table_dual.dims[(p, q)] != table_nondual.dims[(p, q)]
    ]
    p_totals = {}
    for (p, q), v in table_dual.dims.items():
        p_totals[q] = p_totals.get(q, 0) + v
    riemann = {}
    if h.dim == g.dim - 1:
        expected = {
            q: k_table.dims.get(q, 0) + k_table.dims.get(q - 1, 0) for q in range(n + 1)
        }
        riemann = {
            "expected_Hq_plus_Hq_minus_1": {str(q): v for q, v in expected.items()},
            "p_summed_matches": all(p_totals.get(q, 0) == expected[q] for q in expected),
            "per_pq_matches": all(
                table_dual.dims.get((p, q), 0) == expected[q]
                for p in range(m + 1)
                for q in expected
            ),
        }
    notes = [
        "K = exp(k in g_R) is assumed closed (user assertion, not checkable "
        "from structure constants)",
        "compactness and semisimplicity of G are user assertions",
        "licensing regime: for a left-invariant elliptic structure with "
        "closed orbits on a connected semisimple compact group, these "
        "algebraic dimensions equal the analytic cohomology dimensions; "
        "outside that regime the comparison map is injective only",
        "fiber coefficients use the dual exterior power by default; the "
        "non-dual variant is reported alongside and disagreements are listed",
    ]
    return AssemblyReport(
        subalgebra=h,
        k_sub=k_sub,
        u_ideal=u_ideal,
        u_star=u_star,
        k_table=k_table,
        fiber_dual=fiber_dual,
        fiber_nondual=fiber_nondual,
        table_dual=table_dual,
        table_nondual=table_nondual,
        output=table_dual,
        disagreements=disagreements,
        p_totals=p_totals,
        riemann_comparison=riemann,
        notes=notes,
    )
