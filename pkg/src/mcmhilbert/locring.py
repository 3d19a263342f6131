"""Truncated power series, complete-intersection quotients and Hilbert functions.

Everything lives inside ``Q / n^D`` where ``Q = k[[x_1..x_m]]``.  Monomials of
degree ``< D`` are indexed degree by degree (degree ascending, lexicographically
descending inside a degree), and every linear-algebra computation uses that
order.  With pivots taken at the smallest column, the echelon data of a
subspace answers questions about all the truncations ``Q / n^k``, ``k <= D``,
at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .exactla import EchelonBasis, ExactMatrix, FieldSpec, rank as matrix_rank
from .expr import format_polynomial, parse_polynomial

INFINITE = math.inf
DEFAULT_TRUNCATION = 12


class PrecisionExceeded(ValueError):
    """A requested degree cannot be certified at the current truncation."""


class ZeroElement(ValueError):
    pass


def monomials_of_degree(nvars: int, d: int):
    """Exponent tuples of total degree ``d``, lexicographically descending."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


class MonomialIndex:
    """All monomials of degree ``< D`` in a fixed degree-major order."""

    def __init__(self, nvars: int, D: int):
        self.nvars = nvars
        self.D = D
        self.monos: list[tuple[int, ...]] = []
        self.block: list[int] = []
        for d in range(D):
            self.block.append(len(self.monos))
            self.monos.extend(monomials_of_degree(nvars, d))
        self.block.append(len(self.monos))
        self.index = {m: i for i, m in enumerate(self.monos)}
        self.degree = [sum(m) for m in self.monos]

    def __len__(self):
        return len(self.monos)

    def count_below(self, k: int) -> int:
        """Number of monomials of degree < k."""
        return self.block[min(k, self.D)]


@lru_cache(maxsize=64)
def monomial_index(nvars: int, D: int) -> MonomialIndex:
    return MonomialIndex(nvars, D)


@dataclass(frozen=True)
class RingSpec:
    """``k[[variables]]`` read modulo ``n^D``; ``D=None`` means exact polynomials."""

    variables: tuple[str, ...]
    D: int | None = DEFAULT_TRUNCATION
    field: FieldSpec = dc_field(default_factory=FieldSpec)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if self.D is not None and self.D < 2:
            raise ValueError("truncation order D must be at least 2")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def index(self) -> MonomialIndex:
        if self.D is None:
            raise ValueError("exact polynomial ring has no monomial index")
        return monomial_index(self.nvars, self.D)

    def with_trunc(self, D: int | None) -> "RingSpec":
        return RingSpec(self.variables, D, self.field)

    def exact(self) -> "RingSpec":
        return self.with_trunc(None)

    def __call__(self, x) -> "TruncatedSeries":
        return self.series(x)

    def series(self, x) -> "TruncatedSeries":
        """Build an element from an expression string, term dict, scalar or series."""
        if isinstance(x, TruncatedSeries):
            if x.ring.variables != self.variables:
                raise ValueError("variable mismatch")
            return TruncatedSeries(self, x.terms)
        if isinstance(x, str):
            return TruncatedSeries(self, parse_polynomial(x, self.variables))
        if isinstance(x, dict):
            return TruncatedSeries(self, x)
        return TruncatedSeries(self, {(0,) * self.nvars: x})

    def gens(self) -> list["TruncatedSeries"]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(TruncatedSeries(self, {tuple(e): 1}))
        return out

    def zero(self) -> "TruncatedSeries":
        return TruncatedSeries(self, {})

    def one(self) -> "TruncatedSeries":
        return self.series(1)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedSeries:
    """An element of ``Q`` known modulo ``n^D`` (exactly, when ``D`` is None)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms=None):
        F = ring.field
        D = ring.D
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if D is not None and sum(e) >= D:
                continue
            c = F(c)
            if c:
                clean[e] = c
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def __repr__(self):
        return f"TruncatedSeries({self})"

    def __str__(self):
        return format_polynomial(self.terms, self.ring.variables, self.ring.field.signed)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.ring.variables != self.ring.variables:
                raise ValueError("variable mismatch")
            ring = self.ring.with_trunc(_min_trunc(self.ring.D, other.ring.D))
            return ring, other
        return self.ring, self.ring.series(other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.series(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        D = _min_trunc(self.ring.D, other.ring.D)
        if D is None:
            return self.terms == other.terms
        return self.truncate(D).terms == other.truncate(D).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        ring, other = self._coerce(other)
        F = ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            nv = F.add(out.get(e, F.zero()), c)
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        return TruncatedSeries(ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return TruncatedSeries._raw(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        ring, other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            F = self.ring.field
            c = F(other)
            if not c:
                return self.ring.zero()
            return TruncatedSeries._raw(self.ring, {e: F.mul(c, v) for e, v in self.terms.items()})
        ring, other = self._coerce(other)
        return TruncatedSeries._raw(ring, mul_terms(self.terms, other.terms, ring.field, ring.D))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, D: int | None) -> "TruncatedSeries":
        return TruncatedSeries(self.ring.with_trunc(_min_trunc(self.ring.D, D)), self.terms)

    def ord(self):
        """Least degree carrying a nonzero coefficient; ``INFINITE`` for zero."""
        if not self.terms:
            return INFINITE
        return min(sum(e) for e in self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def initial_form(self) -> "TruncatedSeries":
        """The homogeneous component of lowest degree."""
        if not self.terms:
            raise ZeroElement("zero has no initial form")
        o = self.ord()
        return TruncatedSeries._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == o})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def is_unit(self) -> bool:
        return bool(self.constant_term())

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a unit, modulo ``n^D``."""
        if self.ring.D is None:
            raise ValueError("inverse needs a truncation order")
        u0 = self.constant_term()
        if not u0:
            raise ZeroDivisionError("not a unit")
        F = self.ring.field
        c = F.inv(u0)
        nil = self.ring.one() - self * c
        out = self.ring.one()
        power = self.ring.one()
        for _ in range(1, self.ring.D):
            power = power * nil
            if power.is_zero():
                break
            out = out + power
        return out * c


def mul_terms(a: dict, b: dict, F: FieldSpec, D: int | None) -> dict:
    p = F.p
    out = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if D is not None and da + sum(eb) >= D:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            nv = out.get(e, 0) + ca * cb
            if p:
                nv %= p
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
    return out


def ord(x: TruncatedSeries):
    return x.ord()


def initial_form(x: TruncatedSeries) -> TruncatedSeries:
    return x.initial_form()


class TruncatedQuotient:
    """``A / m^D = Q / ((f) + n^D)`` with an explicit standard-monomial basis.

    The relation space ``{f_j * x^a}`` is kept in echelon form over the
    degree-major monomial order, tagged with ``(j, a)`` so that membership in
    ``(f) + n^D`` comes with multipliers.  Non-pivot monomials are the standard
    monomials; those of degree ``< k`` form a basis of ``A / m^k`` for every
    ``k <= D``.
    """

    def __init__(self, nvars: int, field: FieldSpec, relations: Sequence[dict], D: int):
        self.nvars = nvars
        self.field = field
        self.D = D
        self.idx = idx = monomial_index(nvars, D)
        self.relations = [dict(f) for f in relations]
        self.ideal = eb = EchelonBasis(field, track=True)
        for j, f in enumerate(self.relations):
            if not f:
                continue
            o = min(sum(e) for e in f)
            for ai, alpha in enumerate(idx.monos):
                if idx.degree[ai] + o >= D:
                    break
                v = {}
                for e, c in f.items():
                    k = tuple(x + y for x, y in zip(alpha, e))
                    if sum(k) < D:
                        v[idx.index[k]] = c
                eb.add(v, tag=(j, ai))
        self.std = [i for i in range(len(idx)) if i not in eb.rows]
        self.std_pos = {m: pos for pos, m in enumerate(self.std)}
        self.std_degree = [idx.degree[m] for m in self.std]
        self.std_block = [0] * (D + 1)
        for d in range(D + 1):
            self.std_block[d] = sum(1 for x in self.std_degree if x < d)
        self._nf: dict[int, dict] = {}

    def __len__(self):
        return len(self.std)

    def hf(self) -> list[int]:
        """Hilbert function of A in degrees ``0..D-1``."""
        return [self.std_block[d + 1] - self.std_block[d] for d in range(self.D)]

    def nf_mono(self, mi: int) -> dict:
        """Normal form of the monomial with index ``mi`` as ``{std position: coef}``."""
        got = self._nf.get(mi)
        if got is None:
            rem, _ = self.ideal.reduce({mi: 1})
            got = {self.std_pos[k]: c for k, c in rem.items()}
            self._nf[mi] = got
        return got

    def nf(self, terms: dict) -> dict:
        """Normal form of a polynomial given as ``{exponent: coef}``."""
        F = self.field
        out: dict = {}
        for e, c in terms.items():
            if sum(e) >= self.D:
                continue
            for k, a in self.nf_mono(self.idx.index[e]).items():
                nv = F.add(out.get(k, 0), F.mul(c, a))
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def times(self, pos: int, terms: dict) -> dict:
        """Normal form of (standard monomial at ``pos``) * ``terms``."""
        F = self.field
        alpha = self.idx.monos[self.std[pos]]
        da = self.std_degree[pos]
        out: dict = {}
        for e, c in terms.items():
            if da + sum(e) >= self.D:
                continue
            k = tuple(x + y for x, y in zip(alpha, e))
            for q, a in self.nf_mono(self.idx.index[k]).items():
                nv = F.add(out.get(q, 0), F.mul(c, a))
                if nv:
                    out[q] = nv
                else:
                    out.pop(q, None)
        return out

    def to_terms(self, vec: dict) -> dict:
        """Standard-coordinate vector back to a polynomial in standard monomials."""
        return {self.idx.monos[self.std[pos]]: c for pos, c in vec.items()}

    def express(self, terms: dict) -> list[dict] | None:
        """Multipliers ``c_j`` with ``sum c_j f_j == terms`` modulo ``n^D``, or ``None``."""
        v = {self.idx.index[e]: c for e, c in terms.items() if sum(e) < self.D}
        rem, comb = self.ideal.reduce(v, combine=True)
        if rem:
            return None
        F = self.field
        out = [dict() for _ in self.relations]
        for (j, ai), c in comb.items():
            e = self.idx.monos[ai]
            nv = F.add(out[j].get(e, 0), c)
            if nv:
                out[j][e] = nv
            else:
                out[j].pop(e, None)
        return out


@lru_cache(maxsize=128)
def _truncation(nvars, field, relations_key, D):
    rels = [dict(r) for r in relations_key]
    return TruncatedQuotient(nvars, field, rels, D)


def _key(terms: dict):
    return tuple(sorted(terms.items()))


class QuotientPresentation:
    """``A = Q/(f_1..f_c)`` with a declared regular sequence ``f`` in ``n^2``.

    ``regular=False`` accepts any ideal in ``n^2`` (used for non-complete-
    intersection semigroup rings); dimension data are then not declared.
    """

    def __init__(self, ring: RingSpec, relations: Sequence = (), regular: bool = True):
        self.ring = ring
        exact = ring.exact()
        # exact polynomials as given; ``relations`` are their truncations mod n^D
        self.polynomials = [exact.series(f.terms if isinstance(f, TruncatedSeries) else f) for f in relations]
        self.relations = [ring.series(f.terms) for f in self.polynomials]
        self.regular = regular
        for i, f in enumerate(self.polynomials):
            if f.is_zero():
                raise ValueError(f"relation {i} is zero")
            if f.ord() < 2:
                raise ValueError(f"relation {i} ({f}) is not in n^2")
        if regular and len(self.relations) > ring.nvars:
            raise ValueError("a regular sequence has at most m elements")

    def __repr__(self):
        rels = ", ".join(str(f) for f in self.relations)
        return f"QuotientPresentation(k[[{','.join(self.ring.variables)}]]/({rels}), D={self.ring.D})"

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def D(self) -> int:
        return self.ring.D

    @property
    def c(self) -> int:
        return len(self.relations)

    @property
    def declared_dim(self) -> int | None:
        return self.ring.nvars - self.c if self.regular else None

    @property
    def embdim(self) -> int:
        return self.truncation().hf()[1]

    @property
    def codim(self) -> int | None:
        if self.declared_dim is None:
            return None
        return self.embdim - self.declared_dim

    def with_trunc(self, D: int) -> "QuotientPresentation":
        ring = self.ring.with_trunc(D)
        return QuotientPresentation(ring, [f.terms for f in self.polynomials], self.regular)

    def truncation(self, D: int | None = None) -> TruncatedQuotient:
        D = self.ring.D if D is None else D
        key = tuple(_key(f.truncate(D).terms) for f in self.polynomials)
        return _truncation(self.ring.nvars, self.ring.field, key, D)

    def hilbert_function(self, n_max: int) -> "HilbertVector":
        return hilbert_function(ModulePresentation.free(self, 1), n_max)


class ModulePresentation:
    """``M = coker(Phi)`` for an ``r x s`` matrix ``Phi`` over ``A``."""

    def __init__(self, over: QuotientPresentation, matrix: Sequence[Sequence] = (), rank: int | None = None):
        self.over = over
        rows = [[over.ring.series(x) for x in row] for row in matrix]
        if rank is None:
            if not rows:
                raise ValueError("rank must be given for an empty presentation")
            rank = len(rows)
        if rows and len(rows) != rank:
            raise ValueError("matrix row count must equal the rank")
        if rank < 1:
            raise ValueError("rank must be positive")
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged presentation matrix")
        self.r = rank
        self.s = ncols
        self.matrix = rows if rows else [[] for _ in range(rank)]

    @classmethod
    def free(cls, over: QuotientPresentation, r: int) -> "ModulePresentation":
        return cls(over, [], rank=r)

    @classmethod
    def residue_field(cls, over: QuotientPresentation) -> "ModulePresentation":
        return cls(over, [over.ring.gens()])

    def __repr__(self):
        return f"ModulePresentation(r={self.r}, s={self.s}, over={self.over!r})"

    @property
    def D(self) -> int:
        return self.over.D

    def column(self, j: int) -> list[TruncatedSeries]:
        return [self.matrix[i][j] for i in range(self.r)]

    def with_trunc(self, D: int) -> "ModulePresentation":
        A = self.over.with_trunc(D)
        return ModulePresentation(A, [[x.terms for x in row] for row in self.matrix] if self.s else [], self.r)

    def mu(self) -> int:
        """Minimal number of generators, ``r - rank(Phi mod m)``."""
        F = self.over.field
        if not self.s:
            return self.r
        m0 = ExactMatrix(F, [[x.constant_term() for x in row] for row in self.matrix], self.s)
        return self.r - matrix_rank(m0)


def image_echelon(T: TruncatedQuotient, columns: Sequence[Sequence[dict]], r: int) -> EchelonBasis:
    """Echelon basis of the A-span of ``columns`` inside ``(A/m^D)^r``.

    Coordinates: standard position ``pos`` and component ``k`` map to
    ``pos * r + k``, so degree blocks stay contiguous.
    """
    eb = EchelonBasis(T.field)
    for col in columns:
        for pos in range(len(T)):
            v = {}
            for k, entry in enumerate(col):
                if not entry:
                    continue
                for q, c in T.times(pos, entry).items():
                    v[q * r + k] = c
            if v:
                eb.add(v)
    return eb


@dataclass(frozen=True)
class HilbertVector:
    values: tuple[int, ...]
    valid_to: int

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _check_precision(n: int, D: int):
    if n + 1 > D:
        raise PrecisionExceeded(f"degree {n} needs truncation D >= {n + 1}, have D = {D}")


def _module_image(M: ModulePresentation) -> tuple[TruncatedQuotient, EchelonBasis]:
    T = M.over.truncation()
    cols = [[x.terms for x in M.column(j)] for j in range(M.s)]
    return T, image_echelon(T, cols, M.r)


def layer_basis(M: ModulePresentation, n: int) -> list[tuple[tuple[int, ...], int]]:
    """k-basis of ``m^n M / m^(n+1) M`` as ``(monomial exponents, generator index)`` pairs."""
    _check_precision(n, M.D)
    T, W = _module_image(M)
    r = M.r
    lo, hi = T.std_block[n] * r, T.std_block[n + 1] * r
    out = []
    for col in range(lo, hi):
        if col not in W.rows:
            pos, k = divmod(col, r)
            out.append((T.idx.monos[T.std[pos]], k))
    return out


def hilbert_function(M: ModulePresentation, n_max: int) -> HilbertVector:
    """``H(M, n)`` for ``n = 0..n_max``, exact for ``n_max + 1 <= D``."""
    _check_precision(n_max, M.D)
    T, W = _module_image(M)
    r = M.r
    hA = T.hf()
    piv = W.pivots
    values = []
    for n in range(n_max + 1):
        lo, hi = T.std_block[n] * r, T.std_block[n + 1] * r
        used = sum(1 for c in piv if lo <= c < hi)
        values.append(r * hA[n] - used)
    return HilbertVector(tuple(values), n_max)


@dataclass(frozen=True)
class MonotonicityReport:
    nondecreasing: bool
    first_violation: int | None


def monotonicity_report(h) -> MonotonicityReport:
    """Check ``H(n) <= H(n+1)`` for ``n < valid_to``."""
    values = tuple(h)
    valid_to = getattr(h, "valid_to", len(values) - 1)
    for n in range(min(valid_to, len(values) - 1)):
        if values[n] > values[n + 1]:
            return MonotonicityReport(False, n)
    return MonotonicityReport(True, None)
