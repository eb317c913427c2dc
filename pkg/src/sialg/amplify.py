"""Amplified algebras End(P_1^m1 + ... + P_n^mn) and spread comultiplications.

The amplified basis is indexed by (source class i, target class j, source
copy s, target copy t, corner basis element b); copy indices are 1-based
here, matching the subset data S(i) in {1..m(i)} x {1..m(nu^-1 i)}.  The
spreading operation distributes each corner block of an invariant basic
tensor over copies according to S(i), and the two counitality routes
(direct construction for bijection graphs, and an independent linear
feasibility oracle) are kept strictly separate so they can cross-check
each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    Element,
    FinDimAlgebra,
    Functional,
    Tensor2,
    apply_functional,
    check_coassociativity,
    delta_rank,
    is_invariant,
    multiply,
)
from .errors import (
    AlgebraError,
    BadBlockSupport,
    BadParams,
    BlockMismatch,
    IndexOutOfRange,
    NotBasic,
    NotBijection,
)
from .linalg import sparse_solve
from .structure import CanonicalDecomposition, NakayamaData, Span


class AmplifiedAlgebra:
    """Endomorphism algebra of copies of the basic projectives.

    dim = sum over class pairs (i, j) of m(i) * m(j) * dim(corner j<-i);
    the product composes morphisms through a matching inner copy index.
    """

    def __init__(self, base: FinDimAlgebra, dec: CanonicalDecomposition, m):
        if any(v != 1 for v in dec.multiplicities):
            raise NotBasic("amplification needs a basic decomposition")
        m = tuple(int(v) for v in m)
        if len(m) != dec.n or any(v < 1 for v in m):
            raise BadParams("multiplicities must list one value >= 1 per class")
        self.base = base
        self.dec = dec
        self.m = m
        n = dec.n
        field = base.field
        reps = dec.reps
        self.corner_bases: dict = {}
        self.corner_spans: dict = {}
        for j in range(n):
            for i in range(n):
                span = Span(field)
                for t in range(base.dim):
                    w = multiply(multiply(reps[j], base.basis_element(t)), reps[i])
                    if w.coeffs:
                        span.add(w.coeffs)
                self.corner_spans[(j, i)] = span
                self.corner_bases[(j, i)] = [
                    Element(base, dict(row)) for row in span.basis_vectors()
                ]
        tuples = []
        for i in range(n):
            for j in range(n):
                corner = self.corner_bases[(j, i)]
                for s in range(1, m[i] + 1):
                    for t in range(1, m[j] + 1):
                        for b in range(len(corner)):
                            tuples.append((i, j, s, t, b))
        self.tuples = tuple(tuples)
        self.index = {tup: a for a, tup in enumerate(tuples)}
        labels = [f"a[{j}<-{i};{t}<-{s}].{b}" for (i, j, s, t, b) in tuples]
        structure = []
        for (i1, j1, s1, t1, b1), a_idx in self.index.items():
            q1 = self.corner_bases[(j1, i1)][b1]
            for (i2, j2, s2, t2, b2), b_idx in self.index.items():
                if i1 != j2 or s1 != t2:
                    continue
                prod = multiply(q1, self.corner_bases[(j2, i2)][b2])
                if not prod.coeffs:
                    continue
                coords = self.corner_spans[(j1, i2)].coordinates(prod.coeffs)
                if coords is None:
                    raise AlgebraError("corner product left its Peirce corner")
                for k, c in enumerate(coords):
                    if c:
                        structure.append(
                            (a_idx, b_idx, self.index[(i2, j1, s2, t1, k)], c)
                        )
        unit = [field.zero] * len(tuples)
        for i in range(n):
            coords = self.corner_spans[(i, i)].coordinates(reps[i].coeffs)
            if coords is None:
                raise AlgebraError("class idempotent escaped its corner")
            for t in range(1, m[i] + 1):
                for k, c in enumerate(coords):
                    if c:
                        unit[self.index[(i, i, t, t, k)]] = c
        self.algebra = FinDimAlgebra(field, labels, structure, unit, validate=True)

    @property
    def n(self) -> int:
        return self.dec.n

    def lift_coords(self, i: int, j: int, coords, s: int, t: int) -> Element:
        """Element with corner coordinates `coords` placed in copies (s, t)."""
        out = {}
        for b, c in enumerate(coords):
            if c:
                out[self.index[(i, j, s, t, b)]] = c
        return Element(self.algebra, out)


def amplify(base: FinDimAlgebra, dec: CanonicalDecomposition, m) -> AmplifiedAlgebra:
    return AmplifiedAlgebra(base, dec, m)


def lift(amp: AmplifiedAlgebra, phi: Element, s: int, t: int) -> Element:
    """Copy-placement of a single-corner element phi of the base algebra."""
    base = amp.base
    reps = amp.dec.reps
    home = None
    for j in range(amp.n):
        for i in range(amp.n):
            w = multiply(multiply(reps[j], phi), reps[i])
            if w.coeffs:
                if home is not None:
                    raise BlockMismatch("element meets several Peirce corners")
                home = (j, i, w)
    if home is None:
        return amp.algebra.zero()
    j, i, w = home
    if w != phi:
        raise BlockMismatch("element is not contained in a single Peirce corner")
    if not (1 <= s <= amp.m[i]) or not (1 <= t <= amp.m[j]):
        raise IndexOutOfRange(
            f"copy indices ({s},{t}) outside 1..{amp.m[i]} x 1..{amp.m[j]}"
        )
    coords = amp.corner_spans[(j, i)].coordinates(phi.coeffs)
    if coords is None:
        raise BlockMismatch("element is not in the corner span")
    return amp.lift_coords(i, j, coords, s, t)


# -- subset data ----------------------------------------------------------------


@dataclass(frozen=True)
class SpreadSpec:
    """Per class i, a set S(i) of 1-based copy index pairs (s, s')."""

    classes: tuple

    def validate(self, m, nak: NakayamaData):
        if len(self.classes) != len(m):
            raise BadParams("subset data must cover every class")
        for i, pairs in enumerate(self.classes):
            hi_s = m[i]
            hi_t = m[nak.nu_inverse(i)]
            for s, s2 in pairs:
                if not (1 <= s <= hi_s and 1 <= s2 <= hi_t):
                    raise IndexOutOfRange(
                        f"pair ({s},{s2}) outside 1..{hi_s} x 1..{hi_t} for class {i}"
                    )

    @classmethod
    def singleton(cls, n: int) -> "SpreadSpec":
        return cls(tuple(frozenset({(1, 1)}) for _ in range(n)))

    @classmethod
    def diagonal(cls, m, nak: NakayamaData) -> "SpreadSpec":
        """Diagonal pairs when m(i) = m(nu^-1 i), the full block otherwise."""
        out = []
        for i in range(len(m)):
            mi, mo = m[i], m[nak.nu_inverse(i)]
            if mi == mo:
                out.append(frozenset((s, s) for s in range(1, mi + 1)))
            else:
                out.append(
                    frozenset(
                        (s, s2) for s in range(1, mi + 1) for s2 in range(1, mo + 1)
                    )
                )
        return cls(tuple(out))

    @classmethod
    def full(cls, m, nak: NakayamaData) -> "SpreadSpec":
        return cls(
            tuple(
                frozenset(
                    (s, s2)
                    for s in range(1, m[i] + 1)
                    for s2 in range(1, m[nak.nu_inverse(i)] + 1)
                )
                for i in range(len(m))
            )
        )

    @classmethod
    def random_nonempty(cls, m, nak: NakayamaData, rng: random.Random) -> "SpreadSpec":
        out = []
        for i in range(len(m)):
            box = [
                (s, s2)
                for s in range(1, m[i] + 1)
                for s2 in range(1, m[nak.nu_inverse(i)] + 1)
            ]
            size = rng.randint(1, len(box))
            out.append(frozenset(rng.sample(box, size)))
        return cls(tuple(out))

    def to_json(self):
        return {
            "classes": [
                {"i": i + 1, "pairs": sorted([s, s2] for (s, s2) in pairs)}
                for i, pairs in enumerate(self.classes)
            ]
        }

    @classmethod
    def from_json(cls, data, n: int) -> "SpreadSpec":
        classes = [frozenset() for _ in range(n)]
        try:
            for row in data["classes"]:
                idx = int(row["i"]) - 1
                if not 0 <= idx < n:
                    raise BadParams(f"class index {row['i']} out of range")
                classes[idx] = frozenset((int(s), int(s2)) for s, s2 in row["pairs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParams(f"malformed subset data: {exc}") from exc
        return cls(tuple(classes))


PRESETS = ("singleton", "diagonal", "full")


def preset_spec(name: str, m, nak: NakayamaData) -> SpreadSpec:
    if name == "singleton":
        return SpreadSpec.singleton(len(m))
    if name == "diagonal":
        return SpreadSpec.diagonal(m, nak)
    if name == "full":
        return SpreadSpec.full(m, nak)
    raise BadParams(f"unknown preset {name!r}")


# -- spreading -------------------------------------------------------------------


def _block_components(amp: AmplifiedAlgebra, y: Tensor2, nak: NakayamaData):
    """Corner-pair components of a basic tensor, in corner coordinates.

    Raises BadBlockSupport unless y lies in the sum of
    corner(j<-i) (x) corner(nu^-1(i)<-j).
    """
    base = amp.base
    n = amp.n
    reps = amp.dec.reps
    proj_cache: dict = {}

    def proj(key, idx):
        got = proj_cache.get((key, idx))
        if got is None:
            j, i = key
            got = multiply(multiply(reps[j], base.basis_element(idx)), reps[i])
            proj_cache[(key, idx)] = got
        return got

    components: dict = {}
    for (a, b), c in y.coeffs.items():
        for j in range(n):
            for i in range(n):
                left = proj((j, i), a)
                if not left.coeffs:
                    continue
                for u in range(n):
                    for v in range(n):
                        right = proj((u, v), b)
                        if not right.coeffs:
                            continue
                        grid = components.setdefault((j, i, u, v), {})
                        lc = amp.corner_spans[(j, i)].coordinates(left.coeffs)
                        rc = amp.corner_spans[(u, v)].coordinates(right.coeffs)
                        for b1, c1 in enumerate(lc):
                            if not c1:
                                continue
                            for b2, c2 in enumerate(rc):
                                if not c2:
                                    continue
                                key = (b1, b2)
                                w = grid.get(key, 0) + c * c1 * c2
                                if w:
                                    grid[key] = w
                                else:
                                    grid.pop(key, None)
    out: dict = {}
    for (j, i, u, v), grid in components.items():
        if not grid:
            continue
        if v != j or u != nak.nu_inverse(i):
            raise BadBlockSupport(
                f"tensor has a component in corners ({j}<-{i}) (x) ({u}<-{v})"
            )
        out[(j, i)] = grid
    return out


def spread(
    amp: AmplifiedAlgebra,
    y: Tensor2,
    spec: SpreadSpec,
    nak: NakayamaData,
    verify: bool = True,
) -> Tensor2:
    """Distribute each corner block of y over projective copies via S(i).

    For a block component phi (x) psi with phi in corner(j<-i), the output
    collects phi^{t<-s} (x) psi^{s'<-t} over t = 1..m(j) and (s, s') in
    S(i).  The result is invariant in the amplified bimodule; this is
    re-verified exactly unless `verify` is disabled.
    """
    spec.validate(amp.m, nak)
    blocks = _block_components(amp, y, nak)
    coeffs: dict = {}
    for (j, i), grid in blocks.items():
        i2 = nak.nu_inverse(i)
        for t in range(1, amp.m[j] + 1):
            for s, s2 in spec.classes[i]:
                for (b1, b2), c in grid.items():
                    k1 = amp.index[(i, j, s, t, b1)]
                    k2 = amp.index[(j, i2, t, s2, b2)]
                    key = (k1, k2)
                    w = coeffs.get(key, 0) + c
                    if w:
                        coeffs[key] = w
                    else:
                        coeffs.pop(key, None)
    x = Tensor2(amp.algebra, coeffs)
    if verify:
        witness = is_invariant(x)
        if witness is not None:
            raise AlgebraError(
                f"spread tensor is not invariant (basis witness {witness})"
            )
    return x


# -- counitality ------------------------------------------------------------------


def is_bijection_graph(spec: SpreadSpec, m, nak: NakayamaData) -> list:
    """Per class, whether S(i) is the graph of a bijection of copy sets."""
    out = []
    for i, pairs in enumerate(spec.classes):
        mi, mo = m[i], m[nak.nu_inverse(i)]
        left = {s for s, _ in pairs}
        right = {s2 for _, s2 in pairs}
        out.append(
            mi == mo
            and len(pairs) == mi
            and left == set(range(1, mi + 1))
            and right == set(range(1, mo + 1))
        )
    return out


def build_counit(
    amp: AmplifiedAlgebra,
    spec: SpreadSpec,
    nak: NakayamaData,
    eps_base: Functional,
    x: Tensor2 | None = None,
) -> Functional:
    """Counit for a bijection-graph spread: the base counit through the
    copy identification on blocks (nu^-1(i) <- i, copies phi_i(t) <- t),
    zero elsewhere.  When x is supplied both counit identities are
    verified exactly."""
    flags = is_bijection_graph(spec, amp.m, nak)
    if not all(flags):
        bad = [i for i, ok in enumerate(flags) if not ok]
        raise NotBijection(f"subset data is not a bijection graph for classes {bad}")
    phi = [dict(pairs) for pairs in spec.classes]
    field = amp.algebra.field
    values = [field.zero] * amp.algebra.dim
    for (i, j, s, t, b), idx in amp.index.items():
        if j == nak.nu_inverse(i) and t == phi[i][s]:
            values[idx] = eps_base(amp.corner_bases[(j, i)][b])
    eps = Functional(amp.algebra, values)
    if x is not None:
        unit = amp.algebra.unit
        if (
            apply_functional("left", eps, x) != unit
            or apply_functional("right", eps, x) != unit
        ):
            raise AlgebraError("constructed counit fails the counit identities")
    return eps


def counit_solution_space(alg: FinDimAlgebra, x: Tensor2):
    """Independent linear oracle for (eps (x) id)x = 1 = (id (x) eps)x.

    Returns (Functional or None, dimension of the homogeneous solution
    space).  Works directly from the sparse tensor coefficients.
    """
    field = alg.field
    d = alg.dim
    left_rows = [dict() for _ in range(d)]
    right_rows = [dict() for _ in range(d)]
    for (a, b), c in x.coeffs.items():
        w = left_rows[b].get(a, field.zero) + c
        if w:
            left_rows[b][a] = w
        else:
            left_rows[b].pop(a, None)
        w = right_rows[a].get(b, field.zero) + c
        if w:
            right_rows[a][b] = w
        else:
            right_rows[a].pop(b, None)
    unit = alg.unit.coeffs
    rows = left_rows + right_rows
    rhs = [unit.get(g, field.zero) for g in range(d)] * 2
    sol, nullity = sparse_solve(rows, rhs, d)
    if sol is None:
        return None, nullity
    values = [field.zero] * d
    for k, c in sol.items():
        values[k] = c
    eps = Functional(alg, values)
    if (
        apply_functional("left", eps, x) != alg.unit
        or apply_functional("right", eps, x) != alg.unit
    ):
        raise AlgebraError("oracle produced an inexact counit")
    return eps, nullity


def counit_feasible(alg_or_amp, x: Tensor2):
    """Optional counit solving both identities, via the linear oracle."""
    alg = alg_or_amp.algebra if isinstance(alg_or_amp, AmplifiedAlgebra) else alg_or_amp
    return counit_solution_space(alg, x)[0]


# -- report ------------------------------------------------------------------------


@dataclass
class ComultiplicationReport:
    dim: int
    invariant: bool
    invariant_witness: int | None
    coassociative: bool
    coassociative_witness: tuple | None
    rank: int
    injective: bool
    bijection_per_class: list | None
    counital: bool
    counit: Functional | None
    counit_built: bool
    feasible: bool
    solution_space_dim: int
    routes_consistent: bool | None

    @property
    def all_core_checks(self) -> bool:
        return self.invariant and self.coassociative

    def to_json(self):
        return {
            "dim": self.dim,
            "invariant": self.invariant,
            "invariant_witness": self.invariant_witness,
            "coassociative": self.coassociative,
            "coassociative_witness": list(self.coassociative_witness)
            if self.coassociative_witness
            else None,
            "delta_rank": self.rank,
            "injective": self.injective,
            "bijection_per_class": self.bijection_per_class,
            "counital": self.counital,
            "counit": self.counit.to_json() if self.counit else None,
            "counit_built": self.counit_built,
            "counit_feasible": self.feasible,
            "solution_space_dim": self.solution_space_dim,
            "routes_consistent": self.routes_consistent,
        }


def comultiplication_report(
    alg: FinDimAlgebra,
    x: Tensor2,
    bijection_per_class: list | None = None,
    built_counit: Functional | None = None,
) -> ComultiplicationReport:
    """Exact verification of one comultiplication tensor.

    Counitality is decided by the independent linear oracle; when a
    constructed counit is supplied, it must satisfy the identities (and
    hence solve the oracle's system), which cross-checks the two routes.
    """
    inv_w = is_invariant(x)
    coa_w = check_coassociativity(x)
    rk = delta_rank(x)
    oracle, nullity = counit_solution_space(alg, x)
    built_ok = None
    if built_counit is not None:
        built_ok = (
            apply_functional("left", built_counit, x) == alg.unit
            and apply_functional("right", built_counit, x) == alg.unit
        )
    counit = built_counit if (built_counit is not None and built_ok) else oracle
    routes = None
    if bijection_per_class is not None:
        routes = (oracle is not None) == all(bijection_per_class)
        if built_counit is not None:
            routes = routes and bool(built_ok)
    return ComultiplicationReport(
        dim=alg.dim,
        invariant=inv_w is None,
        invariant_witness=inv_w,
        coassociative=coa_w is None,
        coassociative_witness=coa_w,
        rank=rk,
        injective=rk == alg.dim,
        bijection_per_class=bijection_per_class,
        counital=oracle is not None,
        counit=counit,
        counit_built=built_counit is not None and bool(built_ok),
        feasible=oracle is not None,
        solution_space_dim=nullity,
        routes_consistent=routes,
    )


def full_report(
    amp: AmplifiedAlgebra,
    x: Tensor2,
    spec: SpreadSpec,
    nak: NakayamaData,
    eps_base: Functional,
) -> ComultiplicationReport:
    """Report for a spread tensor on the amplified model itself."""
    flags = is_bijection_graph(spec, amp.m, nak)
    built = None
    if all(flags):
        built = build_counit(amp, spec, nak, eps_base, x)
    return comultiplication_report(amp.algebra, x, flags, built)
