"""Eisenbud operators and the reduction of a strict complete intersection to a
hypersurface deformation.

Given a complex ``F`` over ``A = Q/(f_1..f_c)``, lift its differentials to
``Q``, write ``d~^2 = sum_j f_j t~_j`` and reduce the ``t~_j`` back to ``A``.
On a minimal resolution of ``M`` the reductions mod ``m`` give the action of
``S = k[t_1..t_c]`` on ``Ext_A(M, k)``.  Operators are unique only up to
homotopy, so tests and reports compare homotopy-invariant data (the Ext
action) rather than chain-level entries.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .exactla import ExactMatrix, FieldSpec, inverse as matrix_inverse, rank as matrix_rank
from .grmod import RegularityVerdict, regular_sequence_test
from .homalg import (
    FreeComplex,
    Matrix,
    PrecisionUnstable,
    betti_table,
    complexity_estimate,
    matmul,
    minimal_resolution,
)
from .locring import ModulePresentation, QuotientPresentation, RingSpec, TruncatedSeries


class NotInIdeal(ValueError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotInvertible(ValueError):
    pass


class NotMinimal(ValueError):
    pass


class NotDimensionOne(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


class NotStrict(ValueError):
    pass


class CertificateFailure(RuntimeError):
    pass


# --- lifting and solving -----------------------------------------------------


@dataclass
class LiftedComplex:
    """Free ``Q``-modules of the given ranks with maps ``d~_i`` lifting a complex over ``A``."""

    over: QuotientPresentation
    ranks: list[int]
    maps: list[Matrix]

    @property
    def ring(self) -> RingSpec:
        return self.over.ring

    @property
    def length(self) -> int:
        return len(self.maps)

    def d(self, i: int) -> Matrix:
        return self.maps[i - 1]

    def square(self, i: int) -> Matrix:
        """``d~_(i-1) d~_i : F~_i -> F~_(i-2)``."""
        return matmul(self.d(i - 1), self.d(i), self.ring, inner=self.ranks[i - 1])

    def reduces_to(self, F: FreeComplex) -> bool:
        """Entry-wise, ``d~`` agrees with ``F`` modulo ``(f) + n^D``."""
        T = self.over.truncation()
        for lifted, orig in zip(self.maps, F.differentials):
            for row_l, row_o in zip(lifted, orig):
                for x, y in zip(row_l, row_o):
                    if T.nf((x - y).terms):
                        return False
        return True


def lift_complex(F: FreeComplex, canonical: bool = True) -> LiftedComplex:
    """Lift every entry to ``Q``.

    The canonical lift is the normal form in standard monomials, truncated
    below ``D``; entries already written in standard monomials are unchanged.
    ``canonical=False`` keeps the stored representatives.
    """
    A = F.over
    T = A.truncation()
    ring = A.ring
    maps = []
    for m in F.differentials:
        if canonical:
            maps.append([[TruncatedSeries._raw(ring, T.to_terms(T.nf(x.terms))) for x in row] for row in m])
        else:
            maps.append([[ring.series(x.terms) for x in row] for row in m])
    return LiftedComplex(A, list(F.ranks), maps)


@dataclass
class OperatorFamily:
    """Maps ``t~_j : F~_i -> F~_(i-2)`` for ``i = 2..N`` and each relation ``j``."""

    lifted: LiftedComplex
    relations: list[TruncatedSeries]
    ops: list[dict[int, Matrix]]

    @property
    def c(self) -> int:
        return len(self.relations)

    @property
    def field(self) -> FieldSpec:
        return self.lifted.ring.field

    def indices(self) -> list[int]:
        return sorted(self.ops[0]) if self.ops else []

    def constant_part(self, j: int, i: int) -> ExactMatrix:
        """``t_j`` modulo ``m`` at index ``i``, a ``rank(F_(i-2)) x rank(F_i)`` matrix over k."""
        m = self.ops[j][i]
        ncols = self.lifted.ranks[i]
        return ExactMatrix(self.field, [[x.constant_term() for x in row] for row in m], ncols)


def _zero_matrix(ring, r, s):
    return [[ring.zero() for _ in range(s)] for _ in range(r)]


def operator_identity_holds(L: LiftedComplex, relations: Sequence[TruncatedSeries], ops: Sequence[dict]) -> bool:
    """``sum_j f_j t~_j == d~^2`` at every index, modulo ``n^D``."""
    ring = L.ring
    for i in range(2, L.length + 1):
        sq = L.square(i)
        for a in range(L.ranks[i - 2]):
            for b in range(L.ranks[i]):
                acc = ring.zero()
                for f, t in zip(relations, ops):
                    acc = acc + ring.series(f.terms) * t[i][a][b]
                if acc != sq[a][b]:
                    return False
    return True


def solve_operators(L: LiftedComplex) -> OperatorFamily:
    """Solve ``d~^2 = sum_j f_j t~_j`` entry by entry.

    Each entry of ``d~^2`` is expressed in ``(f) + n^D`` through the tracked
    relation echelon; the multipliers are the particular solution with all
    free coefficients zero, so the output is deterministic.
    """
    A = L.over
    T = A.truncation()
    ring = L.ring
    c = A.c
    ops: list[dict[int, Matrix]] = [dict() for _ in range(c)]
    for i in range(2, L.length + 1):
        sq = L.square(i)
        mats = [_zero_matrix(ring, L.ranks[i - 2], L.ranks[i]) for _ in range(c)]
        for a in range(L.ranks[i - 2]):
            for b in range(L.ranks[i]):
                mult = T.express(sq[a][b].terms)
                if mult is None:
                    raise NotInIdeal(f"entry ({a},{b}) of d~^2 at index {i} is not in (f)", (i, a, b))
                for j in range(c):
                    mats[j][a][b] = TruncatedSeries._raw(ring, mult[j])
        for j in range(c):
            ops[j][i] = mats[j]
    fam = OperatorFamily(L, list(A.relations), ops)
    if not operator_identity_holds(L, fam.relations, ops):
        raise AssertionError("operator identity failed after solving")
    return fam


# --- change of generators ----------------------------------------------------


def _series_matrix(ring: RingSpec, alpha) -> list[list[TruncatedSeries]]:
    if isinstance(alpha, ExactMatrix):
        alpha = alpha.tolist()
    return [[ring.series(x) for x in row] for row in alpha]


def series_matrix_inverse(ring: RingSpec, alpha) -> list[list[TruncatedSeries]]:
    """Inverse over ``Q / n^D`` by Gauss-Jordan on unit pivots."""
    a = _series_matrix(ring, alpha)
    n = len(a)
    aug = [row + [ring.series(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col].is_unit()), None)
        if piv is None:
            raise NotInvertible("determinant is not a unit")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def transform_generators(alpha, f: Sequence[TruncatedSeries], ring: RingSpec | None = None) -> list[TruncatedSeries]:
    """``[g] = alpha^-1 [f]``, so that ``[f] = alpha [g]`` and ``(g) = (f)``."""
    ring = ring or f[0].ring
    inv = series_matrix_inverse(ring, alpha)
    fs = [ring.series(x) for x in f]
    return [sum((inv[i][k] * fs[k] for k in range(len(fs))), ring.zero()) for i in range(len(fs))]


def base_change_operators(alpha, fam: OperatorFamily) -> OperatorFamily:
    """Operators for ``g = alpha^-1 f``: ``[t'] = alpha^tr [t]``, checked against ``d~^2``."""
    ring = fam.lifted.ring
    a = _series_matrix(ring, alpha)
    c = fam.c
    if len(a) != c or any(len(row) != c for row in a):
        raise ValueError("alpha must be c x c")
    g = transform_generators(a, fam.relations, ring)
    L = fam.lifted
    new_ops: list[dict[int, Matrix]] = []
    for i_new in range(c):
        per = {}
        for idx in fam.indices():
            r, s = L.ranks[idx - 2], L.ranks[idx]
            mat = _zero_matrix(ring, r, s)
            for k in range(c):
                coef = a[k][i_new]
                if coef.is_zero():
                    continue
                src = fam.ops[k][idx]
                for x in range(r):
                    for y in range(s):
                        mat[x][y] = mat[x][y] + coef * src[x][y]
            per[idx] = mat
        new_ops.append(per)
    if not operator_identity_holds(L, g, new_ops):
        raise AssertionError("base-changed operators violate sum g_j t'_j = d~^2")
    return OperatorFamily(L, g, new_ops)


# --- the Ext module ------------------------------------------------------------


@dataclass
class ExtModule:
    """``Ext^i = k^dims[i]`` with ``maps[j][i] : Ext^i -> Ext^(i+2)`` for each operator."""

    field: FieldSpec
    dims: list[int]
    maps: list[dict[int, ExactMatrix]]

    @property
    def c(self) -> int:
        return len(self.maps)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def action(self, coeffs: Sequence, i: int) -> ExactMatrix:
        F = self.field
        out = ExactMatrix.zeros(F, self.dims[i + 2], self.dims[i])
        for b, maps in zip(coeffs, self.maps):
            out = out + maps[i].scale(b)
        return out

    def commutes(self) -> bool:
        for j, l in itertools.combinations(range(self.c), 2):
            for i in range(self.top - 3):
                if self.maps[j][i + 2] @ self.maps[l][i] != self.maps[l][i + 2] @ self.maps[j][i]:
                    return False
        return True

    @classmethod
    def synthetic(cls, field: FieldSpec, dims: Sequence[int], maps: Sequence[dict]) -> "ExtModule":
        conv = []
        for per in maps:
            conv.append({i: m if isinstance(m, ExactMatrix) else ExactMatrix(field, m, dims[i]) for i, m in per.items()})
        return cls(field, list(dims), conv)


def ext_action(F: FreeComplex, fam: OperatorFamily) -> ExtModule:
    """Action of the operators on ``Ext_A(M, k)`` computed from a minimal resolution."""
    if not F.is_minimal():
        raise NotMinimal("resolution has a unit entry; Hom(F, k) would have nonzero differentials")
    Fk = fam.field
    maps = []
    for j in range(fam.c):
        per = {}
        for i in fam.indices():
            # t_j : F_i -> F_(i-2) dualizes to Ext^(i-2) -> Ext^i
            per[i - 2] = fam.constant_part(j, i).transpose()
        maps.append(per)
    dims = list(F.ranks)
    for j in range(fam.c):
        for i in range(len(dims) - 2):
            if i not in maps[j]:
                maps[j][i] = ExactMatrix.zeros(Fk, dims[i + 2], dims[i])
    return ExtModule(Fk, dims, maps)


@dataclass
class GenerationReport:
    new_generators: list[int]
    stabilized: bool
    last_new_degree: int | None
    label: str = "evidence on a finite window"


def finite_generation_window(E: ExtModule, window: int | None = None) -> GenerationReport:
    """Count generators of ``Ext`` over ``S`` that are not hit from two degrees below."""
    top = E.top if window is None else min(window, E.top)
    if top + 1 < 4:
        from .homalg import WindowTooShort

        raise WindowTooShort("need at least 4 degrees")
    new = []
    for d in range(top + 1):
        if d < 2:
            new.append(E.dims[d])
            continue
        blocks = [E.maps[j][d - 2] for j in range(E.c)]
        if E.dims[d] == 0:
            new.append(0)
            continue
        if E.dims[d - 2] == 0 or not blocks:
            new.append(E.dims[d])
            continue
        stacked = ExactMatrix(E.field, [sum((list(b.rows[r]) for b in blocks), []) for r in range(E.dims[d])])
        new.append(E.dims[d] - matrix_rank(stacked))
    last = max((d for d, n in enumerate(new) if n), default=None)
    stabilized = last is None or last <= top - 2
    return GenerationReport(new, stabilized, last)


def dimension_evidence(E: ExtModule) -> int:
    """Krull dimension of ``Ext`` over ``S`` read from the growth of ``dims``."""
    dims = E.dims
    half = len(dims) // 2
    tail = dims[half:]
    if not any(tail):
        return 0
    if max(tail) <= max(dims[: half] or [0]):
        return 1
    if len(dims) >= 6:
        return complexity_estimate(dims).cx_upper_evidence
    return 2


@dataclass(frozen=True)
class ParameterElement:
    coeffs: tuple
    window: tuple[int, int]
    label: str = "bijective on the inspected window"


def _candidates(field: FieldSpec, c: int, limit: int):
    if field.p:
        values = range(1, field.p)
    else:
        values = range(1, 10)
    for n, tup in enumerate(itertools.product(values, repeat=c)):
        if n >= limit:
            return
        yield tuple(field(v) for v in tup)


def parameter_search(E: ExtModule, field: FieldSpec | None = None, window: tuple[int, int] | None = None,
                     limit: int = 10_000) -> ParameterElement:
    """``xi = sum beta_j t_j`` with every ``beta_j`` nonzero and ``xi`` bijective on the window.

    Candidates are swept lexicographically (``1..9`` over the rationals).
    """
    field = field or E.field
    if dimension_evidence(E) != 1:
        raise NotDimensionOne("Ext does not look one-dimensional over S")
    start, stop = window if window is not None else (1, E.top - 2)
    stop = min(stop, E.top - 2)
    for coeffs in _candidates(field, E.c, limit):
        ok = True
        for i in range(start, stop + 1):
            if E.dims[i] != E.dims[i + 2]:
                ok = False
                break
            if E.dims[i] and matrix_rank(E.action(coeffs, i)) != E.dims[i]:
                ok = False
                break
        if ok:
            return ParameterElement(coeffs, (start, stop))
    raise SearchExhausted(f"no parameter among the first {limit} coefficient tuples")


def random_invertible(field: FieldSpec, c: int, rng: random.Random) -> ExactMatrix:
    while True:
        m = ExactMatrix(field, [[rng.randrange(field.p or 19) for _ in range(c)] for _ in range(c)], c)
        if matrix_inverse(m) is not None:
            return m


# --- reduction to a hypersurface deformation ---------------------------------


@dataclass
class StrictReduction:
    order: list[int]
    f: list[TruncatedSeries]
    beta: ExactMatrix
    g: list[TruncatedSeries]
    g_initial: list[TruncatedSeries]
    P: QuotientPresentation
    round_trip: bool
    regular: RegularityVerdict | None
    pd_evidence: dict
    dim_P: int
    hypothesis_ok: bool
    xi: ParameterElement
    action_matches: bool
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        reg = self.regular is None or self.regular.regular
        return self.round_trip and reg and self.pd_evidence.get("pd_le_1", False) and self.action_matches


def _initial_forms_regular(A: QuotientPresentation, forms) -> RegularityVerdict:
    exact = A.ring.exact()
    return regular_sequence_test(A.ring.variables, [exact.series(h.terms) for h in forms], field=A.field)


def strict_reduction(A: QuotientPresentation, M: ModulePresentation, E: ExtModule | None = None,
                     xi: ParameterElement | None = None, N: int = 6, pd_window: int = 4) -> StrictReduction:
    """Replace ``f`` by ``g`` with ``(g) = (f)`` so that ``M`` has ``pd <= 1`` over ``P = Q/(g_2..g_c)``.

    Every claim is checked and a failed check raises; nothing is silently
    downgraded.  ``E`` and ``xi`` refer to the relations in their given order.
    """
    ring = A.ring
    F = A.field
    c = A.c
    stars = [f.initial_form() for f in A.polynomials]
    strict = _initial_forms_regular(A, stars)
    if not strict.regular:
        raise NotStrict(f"initial forms are not certified regular: {strict.status}")

    res = minimal_resolution(M, N)
    fam = solve_operators(lift_complex(res))
    if E is None:
        E = ext_action(res, fam)
    if dimension_evidence(E) > 1:
        raise CertificateFailure("complexity evidence exceeds 1")
    if xi is None:
        xi = parameter_search(E, F)

    order = sorted(range(c), key=lambda j: -A.polynomials[j].ord())
    f = [A.relations[j] for j in order]
    b = [F(xi.coeffs[j]) for j in order]
    if any(not x for x in b):
        raise CertificateFailure("parameter has a zero coefficient")

    beta_rows = [b] + [[int(i == j) for j in range(c)] for i in range(1, c)]
    beta = ExactMatrix(F, beta_rows, c)
    alpha = beta.transpose()
    g = transform_generators(alpha, f, ring)

    # initial forms predicted by the ord comparison
    inv1 = F.inv(b[0])
    f1s = f[0].initial_form()
    predicted = [f1s * inv1]
    for j in range(1, c):
        fjs = f[j].initial_form()
        if f[0].ord() > f[j].ord():
            predicted.append(fjs)
        else:
            predicted.append(f1s * F.neg(F.mul(b[j], inv1)) + fjs)
    for j in range(c):
        if g[j].is_zero() or g[j].initial_form() != predicted[j]:
            raise CertificateFailure(f"initial form of g_{j + 1} differs from the predicted {predicted[j]}")

    aa = _series_matrix(ring, alpha)
    back = [sum((aa[i][k] * g[k] for k in range(c)), ring.zero()) for i in range(c)]
    round_trip = all(x == y for x, y in zip(back, f))
    if not round_trip:
        raise CertificateFailure("alpha [g] != [f]")

    regular = _initial_forms_regular(A, predicted[1:]) if c > 1 else None
    if regular is not None and not regular.regular:
        raise CertificateFailure(f"g_2*..g_c* not certified regular: {regular.status}")

    P = QuotientPresentation(ring, [x.terms for x in g[1:]])
    # M over P is presented by [Phi | g_1 I]
    r = M.r
    cols = [[x.terms for x in M.column(j)] for j in range(M.s)]
    for k in range(r):
        cols.append([g[0].terms if i == k else {} for i in range(r)])
    MP = ModulePresentation(P, [[cols[j][i] for j in range(len(cols))] for i in range(r)])
    bt = betti_table(MP, pd_window, P.D)
    pd_le_1 = bt.certified_to >= pd_window and all(x == 0 for x in bt.betti[2:])
    pd_evidence = {"betti": bt.betti, "certified_to": bt.certified_to, "D": (P.D, P.D + 2), "pd_le_1": pd_le_1}
    if not pd_le_1:
        raise CertificateFailure(f"pd_P M <= 1 not evidenced: Betti {bt.betti}, certified to {bt.certified_to}")

    dim_P = ring.nvars - (c - 1)
    dim_A = ring.nvars - c
    # reported, not raised: an Artinian A is a valid input whose P is one-dimensional
    hypothesis_ok = dim_P == dim_A + 1 and dim_P >= 2 and (regular is None or regular.regular)

    # operators attached to g act on Ext as xi, t_2, ..., t_c
    perm = OperatorFamily(fam.lifted, f, [fam.ops[j] for j in order])
    moved = ext_action(res, base_change_operators(alpha, perm))
    Ep = ExtModule(E.field, E.dims, [E.maps[j] for j in order])
    top = min(moved.top, Ep.top) - 2
    action_matches = all(moved.maps[0][i] == Ep.action(b, i) for i in range(top + 1))
    action_matches = action_matches and all(
        moved.maps[j][i] == Ep.maps[j][i] for j in range(1, c) for i in range(top + 1))
    if not action_matches:
        raise CertificateFailure("t'_1 does not act as xi on Ext")
    return StrictReduction(order, f, beta, g, predicted, P, round_trip, regular, pd_evidence,
                           dim_P, hypothesis_ok, xi, action_matches)
