"""Structure-constant algebras, elements, functionals and sparse tensors.

A :class:`FinDimAlgebra` stores the products of basis pairs as sparse
rows, so every operation here reduces to exact sparse accumulation.  All
values are immutable after construction and all checks return ``None``
on success or a lowest-index witness on failure, so a failing report can
always point at concrete data.  Everything is pure; the d^3 sweeps and
per-basis invariance checks may safely run concurrently if ever needed.
"""

from __future__ import annotations

from .errors import BadParams, DimensionMismatch, InvalidAlgebra
from .fields import Field
from .linalg import Matrix, sparse_rank


def _accum(dst: dict, key, value):
    w = dst.get(key, 0) + value
    if w:
        dst[key] = w
    else:
        dst.pop(key, None)


class FinDimAlgebra:
    """Finite-dimensional unital associative algebra given by a basis."""

    __slots__ = ("field", "dim", "labels", "rows", "_unit", "_unit_coeffs")

    def __init__(self, field: Field, labels, structure, unit_coeffs, validate: bool = False):
        """structure: iterable of (i, j, k, scalar) with b_i b_j = sum_k c b_k."""
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        d = self.dim
        if d == 0:
            raise BadParams("algebra dimension must be positive")
        rows = [[None] * d for _ in range(d)]
        for i, j, k, c in structure:
            if not (0 <= i < d and 0 <= j < d and 0 <= k < d):
                raise BadParams(f"structure index out of range: {(i, j, k)}")
            c = field(c)
            if not c:
                continue
            row = rows[i][j]
            if row is None:
                row = rows[i][j] = {}
            if k in row:
                raise BadParams(f"duplicate structure entry {(i, j, k)}")
            row[k] = c
        empty = {}
        self.rows = [[r if r is not None else empty for r in line] for line in rows]
        coeffs = {}
        for k, c in enumerate(unit_coeffs):
            c = field(c)
            if c:
                coeffs[k] = c
        self._unit_coeffs = coeffs
        self._unit = Element(self, coeffs)
        if validate:
            w = check_unit(self)
            if w is not None:
                raise InvalidAlgebra(f"unit axiom fails at basis index {w}", witness=w)
            w = check_associativity(self)
            if w is not None:
                raise InvalidAlgebra(f"associativity fails at triple {w}", witness=w)

    @property
    def unit(self) -> "Element":
        return self._unit

    def zero(self) -> "Element":
        return Element(self, {})

    def basis_element(self, i: int) -> "Element":
        return Element(self, {i: self.field.one})

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coeffs) -> "Element":
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        out = {}
        for i, c in items:
            c = self.field(c)
            if c:
                if not 0 <= i < self.dim:
                    raise BadParams(f"coefficient index {i} out of range")
                out[i] = c
        return Element(self, out)

    def functional(self, values) -> "Functional":
        return Functional(self, values)

    def tensor2(self, coeffs) -> "Tensor2":
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        out = {}
        for key, c in items:
            a, b = key
            c = self.field(c)
            if c:
                _accum(out, (a, b), c)
        return Tensor2(self, out)

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.rows[i][j] != self.rows[j][i]:
                    return False
        return True

    def same_space(self, other) -> bool:
        return self is other or (self.dim == other.dim and self.field == other.field)

    def to_json(self) -> dict:
        struct = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k in sorted(self.rows[i][j]):
                    struct.append([i, j, k, self.field.format(self.rows[i][j][k])])
        unit = [
            self.field.format(self._unit_coeffs.get(k, self.field.zero))
            for k in range(self.dim)
        ]
        return {
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": list(self.labels),
            "unit": unit,
            "structure": struct,
        }

    @classmethod
    def from_json(cls, data: dict, validate: bool = True) -> "FinDimAlgebra":
        try:
            field = Field.from_json(data["field"])
            dim = int(data["dim"])
            labels = [str(x) for x in data["basis"]]
            if len(labels) != dim:
                raise BadParams("basis label count differs from dim")
            unit = [field.parse(s) if isinstance(s, str) else field(s) for s in data["unit"]]
            if len(unit) != dim:
                raise BadParams("unit vector length differs from dim")
            structure = [
                (int(i), int(j), int(k), field.parse(c) if isinstance(c, str) else field(c))
                for i, j, k, c in data["structure"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParams(f"malformed algebra JSON: {exc}") from exc
        return cls(field, labels, structure, unit, validate=validate)

    def structure_equal(self, other: "FinDimAlgebra") -> bool:
        """Same field, dimension, products and unit (labels ignored)."""
        return (
            self.field == other.field
            and self.dim == other.dim
            and self.rows == other.rows
            and self._unit_coeffs == other._unit_coeffs
        )

    def __repr__(self):
        return f"FinDimAlgebra(dim={self.dim}, field={self.field!r})"


class Element:
    """Sparse algebra element; supports +, -, * (product or scalar)."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FinDimAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other):
        if not self.algebra.same_space(other.algebra):
            raise DimensionMismatch("elements of different algebras")

    def coefficient(self, i: int):
        return self.coeffs.get(i, self.algebra.field.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def dense(self) -> tuple:
        z = self.algebra.field.zero
        return tuple(self.coeffs.get(i, z) for i in range(self.algebra.dim))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra.same_space(other.algebra) and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            _accum(out, i, c)
        return Element(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            _accum(out, i, -c)
        return Element(self.algebra, out)

    def __neg__(self):
        return Element(self.algebra, {i: -c for i, c in self.coeffs.items()})

    def scaled(self, c):
        c = self.algebra.field(c)
        if not c:
            return Element(self.algebra, {})
        return Element(self.algebra, {i: v * c for i, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{self.algebra.labels[i]}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


class Functional:
    """Linear functional as a dense value row over the basis."""

    __slots__ = ("algebra", "values")

    def __init__(self, algebra: FinDimAlgebra, values):
        values = tuple(algebra.field(v) for v in values)
        if len(values) != algebra.dim:
            raise DimensionMismatch("functional length differs from dim")
        self.algebra = algebra
        self.values = values

    def __call__(self, a: Element):
        if not self.algebra.same_space(a.algebra):
            raise DimensionMismatch("functional applied across algebras")
        acc = self.algebra.field.zero
        for i, c in a.coeffs.items():
            acc = acc + self.values[i] * c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return self.algebra.same_space(other.algebra) and self.values == other.values

    def to_json(self):
        return [self.algebra.field.format(v) for v in self.values]

    @classmethod
    def from_json(cls, algebra, data):
        return cls(algebra, [algebra.field.parse(s) for s in data])

    def __repr__(self):
        return f"Functional({list(self.values)})"


class Tensor2:
    """Sparse element of A (x) A keyed by basis index pairs."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FinDimAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.algebra.same_space(other.algebra) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _accum(out, k, c)
        return Tensor2(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _accum(out, k, -c)
        return Tensor2(self.algebra, out)

    def scaled(self, c):
        c = self.algebra.field(c)
        if not c:
            return Tensor2(self.algebra, {})
        return Tensor2(self.algebra, {k: v * c for k, v in self.coeffs.items()})

    def to_json(self):
        fmt = self.algebra.field.format
        return [[a, b, fmt(c)] for (a, b), c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, algebra, data):
        parse = algebra.field.parse
        out = {}
        for a, b, c in data:
            a, b = int(a), int(b)
            if not (0 <= a < algebra.dim and 0 <= b < algebra.dim):
                raise BadParams(f"tensor index ({a},{b}) out of range")
            c = parse(c) if isinstance(c, str) else algebra.field(c)
            if c:
                _accum(out, (a, b), c)
        return cls(algebra, out)

    def __repr__(self):
        lbl = self.algebra.labels
        parts = [f"{c}*{lbl[a]}(x){lbl[b]}" for (a, b), c in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


class Tensor3:
    """Sparse element of A (x) A (x) A keyed by basis index triples."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FinDimAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = coeffs

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.algebra.same_space(other.algebra) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs


# -- products and axioms ------------------------------------------------------


def multiply(a: Element, b: Element) -> Element:
    """Bilinear extension of the structure constants."""
    if not a.algebra.same_space(b.algebra):
        raise DimensionMismatch("product across algebras")
    rows = a.algebra.rows
    out: dict = {}
    for i, ca in a.coeffs.items():
        row_i = rows[i]
        for j, cb in b.coeffs.items():
            c = ca * cb
            for k, ck in row_i[j].items():
                _accum(out, k, c * ck)
    return Element(a.algebra, out)


def check_unit(alg: FinDimAlgebra):
    """None if 1*b_i = b_i = b_i*1 for all i, else the first failing index."""
    one = alg.unit
    for i in range(alg.dim):
        b = alg.basis_element(i)
        if multiply(one, b) != b or multiply(b, one) != b:
            return i
    return None


def check_associativity(alg: FinDimAlgebra):
    """None if all basis triples associate, else the first failing (i, j, k)."""
    rows = alg.rows
    d = alg.dim
    for i in range(d):
        rows_i = rows[i]
        for j in range(d):
            ij = rows_i[j]
            rows_j = rows[j]
            for k in range(d):
                left: dict = {}
                for l, c in ij.items():
                    for m, c2 in rows[l][k].items():
                        _accum(left, m, c * c2)
                right: dict = {}
                for l, c in rows_j[k].items():
                    for m, c2 in rows_i[l].items():
                        _accum(right, m, c * c2)
                if left != right:
                    return (i, j, k)
    return None


# -- bimodule action on tensors ----------------------------------------------


def act_left(a: Element, t: Tensor2) -> Tensor2:
    """a . (u (x) v) = (a u) (x) v, extended bilinearly."""
    if not a.algebra.same_space(t.algebra):
        raise DimensionMismatch("action across algebras")
    rows = t.algebra.rows
    out: dict = {}
    for (alpha, beta), c in t.coeffs.items():
        for i, ca in a.coeffs.items():
            cc = ca * c
            for k, ck in rows[i][alpha].items():
                _accum(out, (k, beta), cc * ck)
    return Tensor2(t.algebra, out)


def act_right(t: Tensor2, a: Element) -> Tensor2:
    """(u (x) v) . a = u (x) (v a), extended bilinearly."""
    if not a.algebra.same_space(t.algebra):
        raise DimensionMismatch("action across algebras")
    rows = t.algebra.rows
    out: dict = {}
    for (alpha, beta), c in t.coeffs.items():
        row_beta = rows[beta]
        for j, ca in a.coeffs.items():
            cc = c * ca
            for k, ck in row_beta[j].items():
                _accum(out, (alpha, k), cc * ck)
    return Tensor2(t.algebra, out)


def is_invariant(t: Tensor2):
    """None when b.t = t.b for every basis element b, else a witness index.

    Invariance is linear in the acting element, so checking the basis is
    exhaustive for the whole algebra.
    """
    alg = t.algebra
    for g in range(alg.dim):
        b = alg.basis_element(g)
        if act_left(b, t) != act_right(t, b):
            return g
    return None


def delta_of(x: Tensor2, a: Element) -> Tensor2:
    """Comultiplication induced by an invariant tensor: a -> a.x."""
    return act_left(a, x)


def check_coassociativity(x: Tensor2):
    """Compare (Delta (x) id) and (id (x) Delta) applied to x, exactly.

    Returns None on equality or the first differing triple.  Combined
    with invariance this certifies coassociativity of the induced map on
    the whole algebra.
    """
    alg = x.algebra
    rows = alg.rows
    left: dict = {}
    right: dict = {}
    delta_cache: dict = {}

    def delta_basis(idx):
        cached = delta_cache.get(idx)
        if cached is None:
            cached = act_left(alg.basis_element(idx), x).coeffs
            delta_cache[idx] = cached
        return cached

    for (alpha, beta), c in x.coeffs.items():
        for (u, v), cd in delta_basis(alpha).items():
            _accum(left, (u, v, beta), c * cd)
        for (u, v), cd in delta_basis(beta).items():
            _accum(right, (alpha, u, v), c * cd)
    if left == right:
        return None
    keys = set(left) | set(right)
    for key in sorted(keys):
        if left.get(key, 0) != right.get(key, 0):
            return key
    return None


def delta_matrix(x: Tensor2) -> Matrix:
    """Matrix of a -> a.x as a d^2 x d matrix; rank d means injective."""
    alg = x.algebra
    d = alg.dim
    z = alg.field.zero
    cols = []
    for g in range(d):
        img = act_left(alg.basis_element(g), x).coeffs
        cols.append(img)
    rows = [[z] * d for _ in range(d * d)]
    for g, img in enumerate(cols):
        for (a, b), c in img.items():
            rows[a * d + b][g] = c
    return Matrix(alg.field, rows)


def delta_rank(x: Tensor2) -> int:
    """Rank of the induced comultiplication, via sparse elimination."""
    alg = x.algebra
    return sparse_rank(
        act_left(alg.basis_element(g), x).coeffs for g in range(alg.dim)
    )


def apply_functional(side: str, f: Functional, t: Tensor2) -> Element:
    """Contract one tensor leg with a functional: (f (x) id)t or (id (x) f)t."""
    if not f.algebra.same_space(t.algebra):
        raise DimensionMismatch("functional applied across algebras")
    vals = f.values
    out: dict = {}
    if side == "left":
        for (alpha, beta), c in t.coeffs.items():
            v = vals[alpha]
            if v:
                _accum(out, beta, v * c)
    elif side == "right":
        for (alpha, beta), c in t.coeffs.items():
            v = vals[beta]
            if v:
                _accum(out, alpha, c * v)
    else:
        raise BadParams("side must be 'left' or 'right'")
    return Element(t.algebra, out)


# -- basis permutations -------------------------------------------------------


def permute_basis(alg: FinDimAlgebra, perm) -> FinDimAlgebra:
    """Relabelled copy whose basis b'_r equals b_{perm[r]} of the original."""
    perm = list(perm)
    d = alg.dim
    if sorted(perm) != list(range(d)):
        raise BadParams("not a permutation of the basis indices")
    inv = [0] * d
    for r, i in enumerate(perm):
        inv[i] = r
    structure = []
    for i in range(d):
        for j in range(d):
            for k, c in alg.rows[i][j].items():
                structure.append((inv[i], inv[j], inv[k], c))
    unit = [alg.field.zero] * d
    for k, c in alg._unit_coeffs.items():
        unit[inv[k]] = c
    labels = [alg.labels[perm[r]] for r in range(d)]
    return FinDimAlgebra(alg.field, labels, structure, unit)


def map_element(src: Element, dst_alg: FinDimAlgebra, index_map) -> Element:
    """Push an element through a basis index bijection."""
    return dst_alg.element({index_map[i]: c for i, c in src.coeffs.items()})


def minimal_polynomial(a: Element, unit: Element | None = None):
    """Monic minimal polynomial, little-endian coefficients.

    `unit` defaults to the algebra unit; pass a corner idempotent to work
    relative to a corner subalgebra (powers then stay inside the corner).
    """
    alg = a.algebra
    field = alg.field
    rows: dict = {}
    power = alg.unit if unit is None else unit
    k = 0
    while True:
        vec = dict(power.coeffs)
        combo = {k: field.one}
        # reduce vec against the echelon, tracking the combination of powers
        while vec:
            piv = min(vec)
            if piv not in rows:
                break
            c = vec[piv]
            stored_vec, stored_combo = rows[piv]
            for kk, vv in stored_vec.items():
                _accum(vec, kk, -c * vv)
            for kk, vv in stored_combo.items():
                _accum(combo, kk, -c * vv)
        if not vec:
            # dependence: sum combo_t z^t = 0, top power is z^k
            lead = combo[k]
            coeffs = [field.zero] * (k + 1)
            for t, c in combo.items():
                coeffs[t] = c / lead
            return tuple(coeffs)
        piv = min(vec)
        inv = field.one / vec[piv]
        rows[piv] = (
            {kk: vv * inv for kk, vv in vec.items()},
            {kk: vv * inv for kk, vv in combo.items()},
        )
        power = multiply(power, a)
        k += 1
        if k > alg.dim:
            raise InvalidAlgebra("no minimal polynomial found; algebra data corrupt")
