"""Matrix factorizations, minimal free resolutions over ``A``, Betti numbers,
complexity evidence and the virtual projective dimension formula.

Syzygies are computed inside ``A / m^D``.  A kernel computed there contains
the true syzygies plus spurious elements of high order coming from the
truncation, so minimal generators are only read below a cutoff degree and
every result is re-run at ``D + 2``.  Indices where the two runs agree are
reported as certified; nothing beyond them should be trusted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .exactla import EchelonBasis, FieldSpec
from .locring import (
    ModulePresentation,
    QuotientPresentation,
    RingSpec,
    TruncatedQuotient,
    TruncatedSeries,
    image_echelon,
    mul_terms,
)


class NotAFactorization(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrecisionUnstable(RuntimeError):
    """Runs at ``D`` and ``D + 2`` disagree."""


class WindowTooShort(ValueError):
    pass


Matrix = list  # list of rows of TruncatedSeries


def matmul(a: Matrix, b: Matrix, ring: RingSpec, inner: int | None = None) -> Matrix:
    """Product of series matrices, truncated by ``ring``."""
    n = len(b[0]) if b else 0
    inner = len(b) if inner is None else inner
    F, D = ring.field, ring.D
    out = []
    for row in a:
        new = []
        for j in range(n):
            acc: dict = {}
            for k in range(inner):
                for e, c in mul_terms(row[k].terms, b[k][j].terms, F, D).items():
                    nv = F.add(acc.get(e, 0), c)
                    if nv:
                        acc[e] = nv
                    else:
                        acc.pop(e, None)
            new.append(TruncatedSeries._raw(ring, acc))
        out.append(new)
    return out


def _parse_matrix(ring: RingSpec, rows) -> Matrix:
    return [[ring.series(x) for x in row] for row in rows]


@dataclass
class MatrixFactorization:
    """``(phi, psi)`` with ``phi psi = psi phi = f I`` in the polynomial ring."""

    ring: RingSpec
    f: TruncatedSeries
    phi: Matrix
    psi: Matrix

    def __init__(self, ring: RingSpec, f, phi, psi):
        exact = ring.exact()
        self.ring = ring
        self.f = exact.series(f)
        self.phi = _parse_matrix(exact, phi)
        self.psi = _parse_matrix(exact, psi)

    @property
    def size(self) -> int:
        return len(self.phi)

    def hypersurface(self, D: int | None = None) -> QuotientPresentation:
        ring = self.ring if D is None else self.ring.with_trunc(D)
        return QuotientPresentation(ring, [self.f.terms])

    def cokernel(self, D: int | None = None) -> ModulePresentation:
        A = self.hypersurface(D)
        return ModulePresentation(A, [[x.terms for x in row] for row in self.phi])


def mf_verify(mf: MatrixFactorization) -> bool:
    """Check ``phi psi = psi phi = f I`` exactly; raise :class:`NotAFactorization` otherwise."""
    n = mf.size
    if any(len(r) != n for r in mf.phi) or len(mf.psi) != n or any(len(r) != n for r in mf.psi):
        raise NotAFactorization("phi and psi must be square of the same size")
    exact = mf.ring.exact()
    for name, prod in (("phi*psi", matmul(mf.phi, mf.psi, exact)), ("psi*phi", matmul(mf.psi, mf.phi, exact))):
        for i in range(n):
            for j in range(n):
                want = mf.f if i == j else exact.zero()
                if prod[i][j] != want:
                    raise NotAFactorization(f"{name}[{i}][{j}] = {prod[i][j]}, expected {want}", (name, i, j))
    return True


@dataclass
class FreeComplex:
    """``F_N -> ... -> F_1 -> F_0`` over ``A``; ``differentials[i-1]`` is ``d_i: F_i -> F_(i-1)``."""

    over: QuotientPresentation
    ranks: list[int]
    differentials: list[Matrix]
    orders: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.differentials)

    def d(self, i: int) -> Matrix:
        return self.differentials[i - 1]

    def is_minimal(self) -> bool:
        return all(x.ord() >= 1 for m in self.differentials for row in m for x in row)

    def composites_vanish(self) -> bool:
        """``d_i d_(i+1) == 0`` in ``A`` modulo ``m^D``."""
        A = self.over
        T = A.truncation()
        for i in range(1, self.length):
            a, b = self.d(i), self.d(i + 1)
            if not a or not b or not b[0]:
                continue
            prod = matmul(a, b, A.ring, inner=self.ranks[i])
            for row in prod:
                for x in row:
                    if T.nf(x.terms):
                        return False
        return True


def mf_resolution(mf: MatrixFactorization, N: int, D: int | None = None) -> FreeComplex:
    """The 2-periodic complex ``... -psi-> A^n -phi-> A^n`` over ``A = Q/(f)``."""
    mf_verify(mf)
    A = mf.hypersurface(D)
    ring = A.ring
    phi = _parse_matrix(ring, [[x.terms for x in r] for r in mf.phi])
    psi = _parse_matrix(ring, [[x.terms for x in r] for r in mf.psi])
    diffs = [phi if i % 2 == 0 else psi for i in range(N)]
    n = mf.size
    return FreeComplex(A, [n] * (N + 1), diffs)


# --- syzygies ---------------------------------------------------------------


# Kernel elements of the truncated map are read this many degrees below the
# naive cutoff.  When the initial form of an entry is a zero-divisor in the
# associated graded ring, ``ord(phi * a)`` can exceed ``ord(phi) + ord(a)`` and
# an element just under the naive cutoff is killed by truncation alone.
READ_MARGIN = 1


def _cutoff(D: int, columns: Sequence[Sequence[dict]]) -> int:
    orders = [min(sum(e) for e in t) for col in columns for t in col if t]
    o = max(1, min(orders)) if orders else 1
    return D - o - READ_MARGIN


def _kernel_generators(T: TruncatedQuotient, columns: Sequence[Sequence[dict]], r: int,
                       W: EchelonBasis | None, e: int):
    """Minimal generators of ``{a in A^a : Psi a in W}`` read below degree ``e``.

    ``columns[k]`` is the image of the k-th basis vector, a list of ``r`` term
    dicts.  Returns ``(generators, orders)``; generators are coordinate dicts
    in ``(A/m^D)^a``.
    """
    F = T.field
    a = len(columns)
    nstd = len(T)
    ker = EchelonBasis(F, track=True)
    kernel = []
    for col in range(nstd * a - 1, -1, -1):
        pos, k = divmod(col, a)
        v = {}
        for i, entry in enumerate(columns[k]):
            if not entry:
                continue
            for q, c in T.times(pos, entry).items():
                v[q * r + i] = c
        if W is not None and v:
            v = W.reduce(v)[0]
        rel = ker.add(v, tag=col)
        if rel is not None:
            kernel.append((T.std_degree[pos], col, rel))
    kernel.sort(key=lambda t: (t[0], t[1]))
    limit = T.std_block[e] * a
    m = T.nvars
    xs = []
    for i in range(m):
        ex = [0] * m
        ex[i] = 1
        xs.append({tuple(ex): F.one()})
    span = EchelonBasis(F)
    for deg, col, z in kernel:
        if deg + 1 >= e:
            break
        for x in xs:
            prod = {}
            for c0, c in z.items():
                pos, k = divmod(c0, a)
                if T.std_degree[pos] + 1 >= e:
                    continue
                for q, b in T.times(pos, x).items():
                    key = q * a + k
                    if key >= limit:
                        continue
                    nv = F.add(prod.get(key, 0), F.mul(c, b))
                    if nv:
                        prod[key] = nv
                    else:
                        prod.pop(key, None)
            if prod:
                span.add(prod)
    gens, orders = [], []
    for deg, col, z in kernel:
        if deg >= e:
            break
        proj = {c0: c for c0, c in z.items() if c0 < limit}
        if span.add(proj) is None:
            gens.append(z)
            orders.append(deg)
    return gens, orders


def _vectors_to_matrix(T: TruncatedQuotient, ring: RingSpec, vecs: Sequence[dict], a: int) -> Matrix:
    mat = [[None] * len(vecs) for _ in range(a)]
    for j, z in enumerate(vecs):
        comps = [dict() for _ in range(a)]
        for c0, c in z.items():
            pos, k = divmod(c0, a)
            comps[k][pos] = c
        for k in range(a):
            mat[k][j] = TruncatedSeries._raw(ring, T.to_terms(comps[k]))
    return mat


def minimal_columns(A: QuotientPresentation, matrix: Matrix, r: int) -> list[int]:
    """Indices of a minimal generating subset of the columns (first-come order)."""
    T = A.truncation()
    s = len(matrix[0]) if matrix else 0
    cols = [[matrix[i][j].terms for i in range(r)] for j in range(s)]
    F = A.field
    span = EchelonBasis(F)
    # m * (image): multiples by standard monomials of positive degree
    for col in cols:
        for pos in range(T.std_block[1], len(T)):
            v = {}
            for i, t in enumerate(col):
                if t:
                    for q, c in T.times(pos, t).items():
                        v[q * r + i] = c
            if v:
                span.add(v)
    keep = []
    for j, col in enumerate(cols):
        v = {}
        for i, t in enumerate(col):
            for q, c in T.nf(t).items():
                v[q * r + i] = c
        if v and span.add(v) is None:
            keep.append(j)
    return keep


@dataclass
class SyzygyStep:
    presentation: Matrix  # minimal columns of the input
    syzygy: Matrix  # rank(presentation cols) x (number of generators)
    orders: tuple[int, ...]


def _syzygy_raw(A: QuotientPresentation, matrix: Matrix, r: int) -> SyzygyStep:
    keep = minimal_columns(A, matrix, r) if matrix and matrix[0] else []
    pres = [[row[j] for j in keep] for row in matrix] if matrix else [[] for _ in range(r)]
    a = len(keep)
    if a == 0:
        return SyzygyStep(pres, [], ())
    T = A.truncation()
    cols = [[pres[i][j].terms for i in range(r)] for j in range(a)]
    e = _cutoff(A.D, cols)
    gens, orders = _kernel_generators(T, cols, r, None, e)
    return SyzygyStep(pres, _vectors_to_matrix(T, A.ring, gens, a), tuple(orders))


def syzygy_step(A: QuotientPresentation, matrix, D: int | None = None, check: bool = True) -> SyzygyStep:
    """Minimal generators of ``ker(A^s -> A^r)`` for the given ``r x s`` matrix.

    Redundant columns are dropped first, so the returned syzygy matrix is the
    next differential of a minimal resolution.  With ``check`` the step is
    repeated at ``D + 2`` and :class:`PrecisionUnstable` is raised when the
    generator counts or orders differ.
    """
    if D is not None:
        A = A.with_trunc(D)
    r = len(matrix)
    mat = [[A.ring.series(x) for x in row] for row in matrix]
    step = _syzygy_raw(A, mat, r)
    if check:
        A2 = A.with_trunc(A.D + 2)
        mat2 = [[A2.ring.series(x.terms) for x in row] for row in mat]
        step2 = _syzygy_raw(A2, mat2, r)
        if step2.orders != step.orders:
            raise PrecisionUnstable(f"generator orders {step.orders} at D={A.D} vs {step2.orders} at D={A.D + 2}")
    return step


def minimal_resolution(M: ModulePresentation, N: int, D: int | None = None) -> FreeComplex:
    """First ``N`` differentials of a minimal free resolution of ``M`` (truncation ``D``)."""
    if D is not None and D != M.D:
        M = M.with_trunc(D)
    A = M.over
    T = A.truncation()
    ring = A.ring
    r = M.r
    cols = [[x.terms for x in M.column(j)] for j in range(M.s)]
    W = image_echelon(T, cols, r)
    B = [k for k in range(r) if k not in W.rows]  # generators of M/mM
    ranks = [len(B)]
    diffs: list[Matrix] = []
    orders: list[tuple[int, ...]] = [(0,) * len(B)]
    if N == 0:
        return FreeComplex(A, ranks, diffs, orders)
    a = len(B)
    if a:
        inc = []
        for k in B:
            col = [dict() for _ in range(r)]
            col[k] = {(0,) * ring.nvars: 1}
            inc.append(col)
        e = A.D - 1
        gens, ords = _kernel_generators(T, inc, r, W, e)
        first = _vectors_to_matrix(T, ring, gens, a)
    else:
        gens, ords, first = [], [], []
    current = first if gens else [[] for _ in range(a)]
    ranks.append(len(gens))
    diffs.append(current)
    orders.append(tuple(ords))
    for _ in range(1, N):
        rows = ranks[-2]
        step = _syzygy_raw(A, current, rows) if ranks[-1] else SyzygyStep(current, [], ())
        nxt = step.syzygy if step.orders else [[] for _ in range(ranks[-1])]
        ranks.append(len(step.orders))
        diffs.append(nxt)
        orders.append(step.orders)
        current = nxt
    return FreeComplex(A, ranks, diffs, orders)


@dataclass(frozen=True)
class BettiTable:
    betti: tuple[int, ...]
    certified_to: int
    orders: tuple[tuple[int, ...], ...] = ()

    def __getitem__(self, i):
        return self.betti[i]

    def __len__(self):
        return len(self.betti)

    @property
    def certified(self) -> tuple[int, ...]:
        return self.betti[: self.certified_to + 1]


def betti_table(M: ModulePresentation, N: int, D: int | None = None, complex_out: list | None = None) -> BettiTable:
    """``beta_0 .. beta_N`` with the window on which ``D`` and ``D + 2`` agree.

    ``certified_to`` is the last index ``i`` such that Betti numbers and
    generator orders agree for every index ``<= i`` (``-1`` if none).
    """
    D = M.D if D is None else D
    F1 = minimal_resolution(M, N, D)
    F2 = minimal_resolution(M, N, D + 2)
    cert = -1
    for i in range(N + 1):
        if F1.ranks[i] != F2.ranks[i] or F1.orders[i] != F2.orders[i]:
            break
        cert = i
    if complex_out is not None:
        complex_out.append(F1)
    return BettiTable(tuple(F1.ranks), cert, tuple(F1.orders))


@dataclass(frozen=True)
class ComplexityEvidence:
    cx_upper_evidence: int
    bounded: bool
    label: str = "evidence on a finite window"


def complexity_estimate(b) -> ComplexityEvidence:
    """Polynomial growth degree of Betti numbers read off a finite window.

    Bounded tails give complexity ``<= 1`` (``0`` when the tail vanishes);
    otherwise the growth degree is taken from finite differences of the even
    and odd subsequences, falling back to a log-log slope.
    """
    betti = list(b.certified) if isinstance(b, BettiTable) else list(b)
    if len(betti) < 6:
        raise WindowTooShort(f"need at least 6 Betti numbers, have {len(betti)}")
    half = len(betti) // 2
    head, tail = betti[:half], betti[half:]
    if not any(tail):
        return ComplexityEvidence(0, True)
    if max(tail) <= max(betti[1:half] or head):
        return ComplexityEvidence(1, True)
    deg = _growth_degree(betti[1:])
    return ComplexityEvidence(deg + 1, False)


def _growth_degree(seq: list[int]) -> int:
    for sub in (seq, seq[0::2], seq[1::2]):
        diffs = list(sub)
        for d in range(len(sub) - 1):
            if len(set(diffs)) == 1 and len(diffs) >= 2:
                if diffs[0] != 0:
                    return d
            if len(diffs) < 3:
                break
            diffs = [y - x for x, y in zip(diffs, diffs[1:])]
    pts = [(math.log(i + 1), math.log(v)) for i, v in enumerate(seq) if v > 0]
    pts = pts[len(pts) // 2:]
    if len(pts) < 2:
        return 1
    (x0, y0), (x1, y1) = pts[0], pts[-1]
    return max(1, round((y1 - y0) / (x1 - x0)))


def vpd_formula(depth_A: int, depth_M: int, cx: int) -> int:
    """``depth A - depth M + cx M``: virtual projective dimension for a CI ``A``."""
    if depth_A < 0 or depth_M < 0 or cx < 0:
        raise ValueError("depths and complexity must be nonnegative")
    return depth_A - depth_M + cx
