"""Real Lie algebras by structure constants, and their complex subspaces.

An algebra is a real form: a named basis with rational structure
constants, stored only for index pairs j < k (antisymmetry is
structural).  Complex subalgebras are row spaces over Q(i) in that real
basis, kept in reduced row echelon form so that equal subspaces have
identical representations and conjugation is coordinatewise.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

from .linalg import (
    ExactMatrix,
    as_scalar,
    rank_kernel,
    rref,
    solve_linear,
    vec_conj,
    vec_is_zero,
)
from .scalars import GaussianRational, ScalarParseError, ZERO, format_scalar, parse_scalar


class AlgebraError(ValueError):
    pass


class ParentMismatchError(AlgebraError):
    pass


class ClosureError(AlgebraError):
    """A subspace that must be bracket-closed is not; witness is a row pair."""

    def __init__(self, witness, message: str | None = None):
        super().__init__(message or f"subspace is not bracket-closed: witness rows {witness}")
        self.witness = witness


class LieAlgebra:
    """Real Lie algebra with rational structure constants on a named basis.

    Module operations accept coordinate vectors over Q(i); this is the
    implicit complexification.  The Jacobi identity is not assumed at
    construction: call validate() (builders that ship with the package
    do so).
    """

    def __init__(self, name: str, basis_names, brackets):
        self.name = name
        self.basis_names = tuple(basis_names)
        if len(set(self.basis_names)) != len(self.basis_names):
            raise AlgebraError("duplicate basis names")
        n = len(self.basis_names)
        table = {}
        for (j, k), coeffs in brackets.items():
            if not (0 <= j < k < n):
                raise AlgebraError(f"bracket pair ({j},{k}) must satisfy 0 <= j < k < dim")
            entry = {}
            for l, c in coeffs.items():
                if not 0 <= l < n:
                    raise AlgebraError(f"bracket target index {l} out of range")
                c = Fraction(c)
                if c != 0:
                    entry[l] = c
            if entry:
                table[(j, k)] = entry
        self._table = table

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def basis_index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis name {name!r}") from None

    def structure_coeffs(self, j: int, k: int):
        """c_{jk}^l as a sparse dict; antisymmetric in (j, k)."""
        if j == k:
            return {}
        if j < k:
            return dict(self._table.get((j, k), {}))
        return {l: -c for l, c in self._table.get((k, j), {}).items()}

    def bracket_pairs(self):
        return sorted(self._table.keys())

    def bracket(self, v, w):
        """Bilinear antisymmetric extension of the structure constants."""
        n = self.dim
        if len(v) != n or len(w) != n:
            raise AlgebraError("coordinate vector length mismatch")
        out = [ZERO] * n
        for (j, k), coeffs in self._table.items():
            factor = v[j] * w[k] - v[k] * w[j]
            if factor.is_zero():
                continue
            for l, c in coeffs.items():
                out[l] = out[l] + factor * c
        return out

    def basis_vector(self, j: int):
        v = [ZERO] * self.dim
        v[j] = as_scalar(1)
        return v

    def ad_matrix(self, v) -> ExactMatrix:
        """Matrix of ad_v = [v, .] in the algebra basis (columns are images)."""
        cols = [self.bracket(v, self.basis_vector(k)) for k in range(self.dim)]
        return ExactMatrix.from_rows(
            [[cols[k][l] for k in range(self.dim)] for l in range(self.dim)]
        )

    def validate(self):
        """None when the Jacobi identity holds for every basis triple, else
        the lexicographically first failing (j, k, l)."""
        n = self.dim
        for j in range(n):
            ej = self.basis_vector(j)
            for k in range(j + 1, n):
                ek = self.basis_vector(k)
                jk = self.bracket(ej, ek)
                for l in range(k + 1, n):
                    el = self.basis_vector(l)
                    total = self.bracket(jk, el)
                    total = [
                        a + b
                        for a, b in zip(total, self.bracket(self.bracket(ek, el), ej))
                    ]
                    total = [
                        a + b
                        for a, b in zip(total, self.bracket(self.bracket(el, ej), ek))
                    ]
                    if not vec_is_zero(total):
                        return (j, k, l)
        return None

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.name == other.name
            and self.basis_names == other.basis_names
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.name, self.basis_names))

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    # -- JSON interchange

    def to_json_dict(self) -> dict:
        brackets = []
        for (j, k) in self.bracket_pairs():
            coeffs = self._table[(j, k)]
            brackets.append(
                {
                    "on": [self.basis_names[j], self.basis_names[k]],
                    "result": {
                        self.basis_names[l]: format_scalar(GaussianRational(c))
                        for l, c in sorted(coeffs.items())
                    },
                }
            )
        return {"name": self.name, "basis": list(self.basis_names), "brackets": brackets}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LieAlgebra":
        try:
            name = data["name"]
            basis = list(data["basis"])
            raw = data.get("brackets", [])
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed algebra JSON: {exc}") from exc
        index = {b: i for i, b in enumerate(basis)}
        table = {}
        for item in raw:
            a, b = item["on"]
            if a not in index or b not in index:
                raise AlgebraError(f"bracket on unknown basis names {a!r}, {b!r}")
            j, k = index[a], index[b]
            if not j < k:
                raise AlgebraError(f"bracket pair [{a}, {b}] must be in basis order")
            coeffs = {}
            for cname, ctext in item["result"].items():
                if cname not in index:
                    raise AlgebraError(f"bracket result on unknown basis name {cname!r}")
                z = parse_scalar(ctext)
                if not z.is_real():
                    raise AlgebraError(
                        f"structure constant {ctext!r} is not real; algebras are real forms"
                    )
                coeffs[index[cname]] = z.re
            table[(j, k)] = coeffs
        return cls(name, basis, table)


class Subalgebra:
    """Complex subspace of an algebra in canonical reduced echelon form.

    `basis` rows are coordinates over Q(i) in the parent basis.  The name
    is aspirational: closure under bracket is checked by is_subalgebra(),
    and operations that need closure verify it.
    """

    def __init__(self, parent: LieAlgebra, basis: ExactMatrix):
        self.parent = parent
        self.basis = basis

    @classmethod
    def span(cls, parent: LieAlgebra, vectors) -> "Subalgebra":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != parent.dim:
                raise AlgebraError("vector length does not match algebra dimension")
        if not vectors:
            return cls(parent, ExactMatrix.zero(0, parent.dim))
        mat, _ = rref(ExactMatrix.from_rows(vectors))
        return cls(parent, mat)

    @classmethod
    def full(cls, parent: LieAlgebra) -> "Subalgebra":
        return cls(parent, ExactMatrix.identity(parent.dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self):
        return self.basis.row_list()

    def _require_same_parent(self, other: "Subalgebra"):
        if self.parent != other.parent:
            raise ParentMismatchError("subspaces have different parent algebras")

    def contains(self, v) -> bool:
        return self.coordinates_of(v) is not None

    def coordinates_of(self, v):
        """Coefficients of v over the echelon basis rows, or None."""
        if len(v) != self.parent.dim:
            raise AlgebraError("vector length mismatch")
        if self.dim == 0:
            return [] if vec_is_zero(v) else None
        cols = self.basis.transpose()
        coords = solve_linear(cols, list(v))
        return coords

    def sum_with(self, other: "Subalgebra") -> "Subalgebra":
        self._require_same_parent(other)
        return Subalgebra.span(self.parent, self.vectors() + other.vectors())

    def intersect(self, other: "Subalgebra") -> "Subalgebra":
        """Exact intersection via the kernel of the stacked coefficient map."""
        self._require_same_parent(other)
        if self.dim == 0 or other.dim == 0:
            return Subalgebra.span(self.parent, [])
        n = self.parent.dim
        a = self.vectors()
        b = other.vectors()
        combined = ExactMatrix.from_rows(
            [
                [a[j][i] for j in range(len(a))] + [-b[j][i] for j in range(len(b))]
                for i in range(n)
            ]
        )
        _, kernel = rank_kernel(combined)
        vectors = []
        for kv in kernel:
            x = kv[: len(a)]
            vec = [ZERO] * n
            for coeff, row in zip(x, a):
                if not coeff.is_zero():
                    vec = [u + coeff * w for u, w in zip(vec, row)]
            vectors.append(vec)
        return Subalgebra.span(self.parent, vectors)

    def conj(self) -> "Subalgebra":
        """Coordinatewise conjugation (the stored basis spans the real form)."""
        return Subalgebra.span(self.parent, [vec_conj(v) for v in self.vectors()])

    def is_subalgebra(self):
        """None when closed under bracket, else the first failing row pair."""
        vs = self.vectors()
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if not self.contains(self.parent.bracket(vs[a], vs[b])):
                    return (a, b)
        return None

    def __eq__(self, other):
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return self.parent == other.parent and self.basis == other.basis

    def __hash__(self):
        return hash((self.parent, self.basis))

    def __repr__(self):
        return f"Subalgebra(dim={self.dim} of {self.parent.name})"

    # -- JSON interchange

    def to_json_dict(self, inline_algebra: bool = False) -> dict:
        vectors = []
        for row in self.vectors():
            entry = {}
            for name, x in zip(self.parent.basis_names, row):
                if not x.is_zero():
                    entry[name] = format_scalar(x)
            vectors.append(entry)
        algebra = self.parent.to_json_dict() if inline_algebra else self.parent.name
        return {"algebra": algebra, "vectors": vectors}

    @classmethod
    def from_json_dict(cls, data: dict, parent: LieAlgebra) -> "Subalgebra":
        try:
            raw = data["vectors"]
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed subalgebra JSON: {exc}") from exc
        vectors = []
        for entry in raw:
            v = [ZERO] * parent.dim
            for name, text in entry.items():
                v[parent.basis_index(name)] = parse_scalar(text)
            vectors.append(v)
        return cls.span(parent, vectors)


# ---------------------------------------------------------------------------
# span{...} shorthand
# ---------------------------------------------------------------------------


def parse_span(text: str, parent: LieAlgebra) -> Subalgebra:
    """Parse ``span{T, X-iY, 2D1+iD2}`` into a subspace of `parent`.

    Each comma-separated entry is a linear combination of basis names
    with Gaussian-rational coefficients in the scalar grammar.
    """
    s = text.strip()
    if not (s.startswith("span{") and s.endswith("}")):
        raise AlgebraError("span shorthand must look like span{...}")
    body = s[len("span{"):-1].strip()
    vectors = []
    if body:
        for chunk in body.split(","):
            vectors.append(_parse_combination(chunk.strip(), parent))
    return Subalgebra.span(parent, vectors)


def _parse_combination(expr: str, parent: LieAlgebra):
    """Scan signed terms ``[coeff]['*']name``; every term ends in a basis name."""
    if not expr:
        raise AlgebraError("empty span entry")
    names = sorted(parent.basis_names, key=len, reverse=True)
    v = [ZERO] * parent.dim
    i, n = 0, len(expr)
    while True:
        while i < n and expr[i].isspace():
            i += 1
        if i >= n:
            raise AlgebraError(f"dangling sign in span entry {expr!r}")
        sign = as_scalar(1)
        if expr[i] in "+-":
            if expr[i] == "-":
                sign = as_scalar(-1)
            i += 1
        matched = False
        for j in range(i, n):
            for name in names:
                if not expr.startswith(name, j):
                    continue
                after = j + len(name)
                if after < n and (expr[after].isalnum() or expr[after] == "_"):
                    continue  # part of a longer identifier
                prefix = expr[i:j].strip()
                if prefix.endswith("*"):
                    prefix = prefix[:-1].strip()
                if prefix == "":
                    coeff = as_scalar(1)
                else:
                    try:
                        coeff = parse_scalar(prefix)
                    except ScalarParseError:
                        continue
                idx = parent.basis_index(name)
                v[idx] = v[idx] + sign * coeff
                i = after
                matched = True
                break
            if matched:
                break
        if not matched:
            raise AlgebraError(f"cannot parse span term starting at {expr[i:]!r}")
        while i < n and expr[i].isspace():
            i += 1
        if i >= n:
            return v
        if expr[i] not in "+-":
            raise AlgebraError(f"expected '+' or '-' at {expr[i:]!r} in span entry")


# ---------------------------------------------------------------------------
# builtin algebras
# ---------------------------------------------------------------------------


def su2() -> LieAlgebra:
    """su(2) with basis (T, X, Y): [T,X]=2Y, [T,Y]=-2X, [X,Y]=2T."""
    T, X, Y = 0, 1, 2
    return LieAlgebra(
        "su2",
        ("T", "X", "Y"),
        {
            (T, X): {Y: 2},
            (T, Y): {X: -2},
            (X, Y): {T: 2},
        },
    )


def su3() -> LieAlgebra:
    """su(3) with basis (T1, T2, X1, Y1, X2, Y2, X3, Y3).

    Structure constants follow the standard traceless skew-Hermitian
    generators: T1=diag(i,-i,0), T2=diag(i,i,-2i), X_k/Y_k the symmetric
    and antisymmetric off-diagonal pairs.
    """
    names = ("T1", "T2", "X1", "Y1", "X2", "Y2", "X3", "Y3")
    T1, T2, X1, Y1, X2, Y2, X3, Y3 = range(8)
    table = {
        (T1, X1): {Y1: 2},
        (T1, Y1): {X1: -2},
        (T1, X2): {Y2: 1},
        (T1, Y2): {X2: -1},
        (T1, X3): {Y3: -1},
        (T1, Y3): {X3: 1},
        (T2, X2): {Y2: 3},
        (T2, Y2): {X2: -3},
        (T2, X3): {Y3: 3},
        (T2, Y3): {X3: -3},
        (X1, Y1): {T1: 2},
        (X1, X2): {Y3: 1},
        (X1, Y2): {X3: -1},
        (X1, X3): {Y2: 1},
        (X1, Y3): {X2: -1},
        (Y1, X2): {X3: 1},
        (Y1, Y2): {Y3: 1},
        (Y1, X3): {X2: -1},
        (Y1, Y3): {Y2: -1},
        (X2, Y2): {T1: 1, T2: 1},
        (X2, X3): {Y1: 1},
        (X2, Y3): {X1: 1},
        (Y2, X3): {X1: -1},
        (Y2, Y3): {Y1: 1},
        (X3, Y3): {T1: -1, T2: 1},
    }
    return LieAlgebra("su3", names, table)


def torus(r: int) -> LieAlgebra:
    """Abelian algebra of rank r with basis D1..Dr."""
    if r < 0:
        raise AlgebraError("torus rank must be nonnegative")
    return LieAlgebra(f"torus{r}", tuple(f"D{i + 1}" for i in range(r)), {})


_TORUS_RE = _re.compile(r"^torus(\d+)$")


def builtin_algebra(name: str) -> LieAlgebra:
    """Resolve a builtin name: su2, su3, torus<r>."""
    if name == "su2":
        return su2()
    if name == "su3":
        return su3()
    m = _TORUS_RE.match(name)
    if m:
        return torus(int(m.group(1)))
    raise AlgebraError(f"unknown builtin algebra {name!r}")
