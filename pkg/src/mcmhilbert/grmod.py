"""Graded quotients ``k[X]/(h)``: Hilbert functions, socle certificates and
regular-sequence tests for initial forms.

Associated graded rings are never computed from scratch here.  A candidate
``G(A)`` is checked instead: its generators must be initial forms of elements
of the ideal of ``A``, and its Hilbert function must agree with that of ``A``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .exactla import EchelonBasis, FieldSpec
from .locring import (
    HilbertVector,
    QuotientPresentation,
    RingSpec,
    TruncatedSeries,
    hilbert_function,
    ModulePresentation,
    monomials_of_degree,
)


class GradedQuotient:
    """``k[variables] / (h_1..h_t)`` with homogeneous generators of positive degree."""

    def __init__(self, variables: Sequence[str], generators: Sequence = (), field: FieldSpec | None = None):
        self.ring = RingSpec(tuple(variables), None, field or FieldSpec())
        self.generators = [self.ring.series(h) for h in generators]
        for h in self.generators:
            if h.is_zero():
                continue
            if not h.is_homogeneous() or h.degree() < 1:
                raise ValueError(f"generator {h} is not homogeneous of positive degree")
        self.generators = [h for h in self.generators if not h.is_zero()]
        self._ideal: dict[int, tuple[list, dict, EchelonBasis]] = {}

    def __repr__(self):
        gens = ", ".join(str(h) for h in self.generators)
        return f"GradedQuotient(k[{','.join(self.ring.variables)}]/({gens}))"

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def variables(self):
        return self.ring.variables

    def component(self, d: int):
        """``(monomials of degree d, index, echelon basis of I_d)``, tracked by ``(generator, monomial)``."""
        got = self._ideal.get(d)
        if got is not None:
            return got
        m = self.ring.nvars
        monos = list(monomials_of_degree(m, d))
        index = {e: i for i, e in enumerate(monos)}
        eb = EchelonBasis(self.field, track=True)
        for j, h in enumerate(self.generators):
            a = h.degree()
            if a > d:
                continue
            for mono in monomials_of_degree(m, d - a):
                v = {}
                for e, c in h.terms.items():
                    v[index[tuple(x + y for x, y in zip(mono, e))]] = c
                eb.add(v, tag=(j, mono))
        got = (monos, index, eb)
        self._ideal[d] = got
        return got

    def dim(self, d: int) -> int:
        monos, _, eb = self.component(d)
        return len(monos) - len(eb)

    def standard_monomials(self, d: int) -> list[tuple[int, ...]]:
        monos, _, eb = self.component(d)
        return [e for i, e in enumerate(monos) if i not in eb.rows]

    def reduce(self, terms: dict, d: int) -> dict:
        """Normal form of a degree-``d`` form modulo ``I_d`` (``{}`` iff it lies in the ideal)."""
        monos, index, eb = self.component(d)
        rem, _ = eb.reduce({index[e]: c for e, c in terms.items()})
        return {monos[i]: c for i, c in rem.items()}

    def membership(self, terms: dict, d: int) -> list[dict] | None:
        """Multipliers ``c_j`` with ``sum c_j h_j == terms``, or ``None``."""
        monos, index, eb = self.component(d)
        rem, comb = eb.reduce({index[e]: c for e, c in terms.items()}, combine=True)
        if rem:
            return None
        F = self.field
        out = [dict() for _ in self.generators]
        for (j, mono), c in comb.items():
            out[j][mono] = F.add(out[j].get(mono, 0), c)
        return [{e: c for e, c in mult.items() if c} for mult in out]


def graded_hf(G: GradedQuotient, n_max: int) -> HilbertVector:
    """``dim_k G_n`` for ``n = 0..n_max``, computed degree by degree."""
    return HilbertVector(tuple(G.dim(n) for n in range(n_max + 1)), n_max)


@dataclass(frozen=True)
class GradedVerdict:
    verified: bool
    degree: int | None = None
    reason: str = ""
    witnesses: tuple = ()

    def __bool__(self):
        return self.verified


def initial_form_witness(A: QuotientPresentation, h: TruncatedSeries):
    """An element ``x`` of the ideal of ``A`` (mod ``n^D``) with ``x* = h``, plus multipliers.

    Uses the degree-``d`` pivots of the truncated relation space: those rows
    are exactly the elements of ``(f) + n^D`` of order ``>= d``.
    """
    d = h.degree()
    T = A.truncation()
    if d >= T.D:
        raise ValueError(f"initial form of degree {d} needs D > {d}")
    idx = T.idx
    lo, hi = idx.block[d], idx.block[d + 1]
    target = {idx.index[e]: c for e, c in h.terms.items()}
    # reduce h against the degree-d parts of the rows pivoting in degree d
    basis = EchelonBasis(A.field, track=True)
    for piv, row in T.ideal.rows.items():
        if lo <= piv < hi:
            basis.add({k: c for k, c in row.items() if k < hi}, tag=piv)
    rem, comb = basis.reduce(target, combine=True)
    if rem:
        return None
    F = A.field
    x: dict = {}
    for piv, c in comb.items():
        for k, a in T.ideal.rows[piv].items():
            nv = F.add(x.get(k, 0), F.mul(c, a))
            if nv:
                x[k] = nv
            else:
                x.pop(k, None)
    element = A.ring.series({idx.monos[k]: c for k, c in x.items()})
    mult = T.express(element.terms)
    return element, [A.ring.series(m) for m in mult]


def verify_assoc_graded(A: QuotientPresentation, G: GradedQuotient, n_max: int) -> GradedVerdict:
    """Check that ``G`` presents the associated graded ring of ``A`` in degrees ``<= n_max``.

    Containment of the candidate ideal in the initial ideal, together with
    equal Hilbert functions, forces equality degree by degree.
    """
    if n_max + 1 > A.D:
        from .locring import PrecisionExceeded

        raise PrecisionExceeded(f"n_max={n_max} needs D >= {n_max + 1}")
    if G.variables != A.ring.variables:
        raise ValueError("variable mismatch")
    witnesses = []
    for h in G.generators:
        w = initial_form_witness(A, A.ring.series(h.terms))
        if w is None:
            return GradedVerdict(False, h.degree(), f"{h} is not an initial form of the ideal")
        witnesses.append((h, w[0], w[1]))
    hA = A.hilbert_function(n_max).values
    hG = graded_hf(G, n_max).values
    for n, (a, b) in enumerate(zip(hA, hG)):
        if a != b:
            return GradedVerdict(False, n, f"H(A,{n}) = {a} but dim G_{n} = {b}", tuple(witnesses))
    return GradedVerdict(True, None, "", tuple(witnesses))


@dataclass(frozen=True)
class SocleCertificate:
    element: TruncatedSeries
    degree: int
    annihilation: tuple  # (variable, product, multipliers proving product is in the ideal)


def socle_witness(G: GradedQuotient, max_degree: int) -> SocleCertificate | None:
    """First nonzero homogeneous class killed by every variable, or ``None``.

    Search is by degree, then in degree-lexicographic order of the leading
    standard monomial.  A certificate proves ``depth G = 0``; ``None`` only
    means nothing was found up to ``max_degree``.
    """
    m = G.ring.nvars
    F = G.field
    for d in range(max_degree + 1):
        basis = G.standard_monomials(d)
        if not basis:
            continue
        # the linear map G_d -> (G_{d+1})^m, x -> (X_1 x, ..., X_m x)
        up = G.standard_monomials(d + 1)
        up_index = {e: i for i, e in enumerate(up)}
        kernel = EchelonBasis(F, track=True)
        relations = []
        for col, e in enumerate(basis):
            v = {}
            for i in range(m):
                shifted = tuple(x + (1 if k == i else 0) for k, x in enumerate(e))
                for q, c in G.reduce({shifted: F.one()}, d + 1).items():
                    v[i * len(up) + up_index[q]] = c
            rel = kernel.add(v, tag=col)
            if rel is not None:
                relations.append(rel)
        if not relations:
            continue
        # echelonize the kernel so the first certificate has the earliest leading monomial
        ker = EchelonBasis(F)
        for rel in relations:
            ker.add(rel)
        lead = min(ker.rows)
        vec = ker.rows[lead]
        element = G.ring.series({basis[k]: c for k, c in vec.items()})
        checks = []
        for i, x in enumerate(G.ring.gens()):
            prod = element * x
            mult = G.membership(prod.terms, d + 1)
            if mult is None:
                raise AssertionError("socle element failed its own annihilation check")
            checks.append((G.variables[i], prod, tuple(G.ring.series(mu) for mu in mult)))
        return SocleCertificate(element, d, tuple(checks))
    return None


@dataclass(frozen=True)
class RegularityVerdict:
    status: str  # "RegularCertified" | "NotRegular" | "Inconclusive"
    degree: int | None = None
    hf: tuple[int, ...] = ()
    expected: tuple[int, ...] = ()
    linear_forms: tuple = ()

    @property
    def regular(self) -> bool:
        return self.status == "RegularCertified"


def ci_series(degrees: Sequence[int], nvars: int, n_max: int) -> list[int]:
    """Coefficients of ``prod(1 - t^a) / (1 - t)^m`` up to ``t^n_max``."""
    num = [0] * (n_max + 1)
    num[0] = 1
    for a in degrees:
        nxt = list(num)
        for i in range(a, n_max + 1):
            nxt[i] -= num[i - a]
        num = nxt
    for _ in range(nvars):
        for i in range(1, n_max + 1):
            num[i] += num[i - 1]
    return num


def _artinian_certificate(variables, field, forms, rng):
    """Find linear forms completing ``forms`` to a system of parameters.

    If ``k[X]/(forms, l_1..l_r)`` vanishes in degree ``sum(a_i - 1) + 1`` the
    ``m`` forms are a homogeneous system of parameters of the polynomial ring,
    hence a regular sequence, and so is the sub-sequence ``forms``.
    """
    m = len(variables)
    c = len(forms)
    top = sum(f.degree() - 1 for f in forms) + 1
    ring = RingSpec(tuple(variables), None, field)
    gens = ring.gens()
    trials = [gens[c:]] if c <= m else []
    for _ in range(8):
        trials.append([sum((ring.series(field(rng.randint(1, 1000))) * x for x in gens), ring.zero())
                       for _ in range(m - c)])
    for lin in trials:
        Gq = GradedQuotient(variables, [f.terms for f in forms] + [l.terms for l in lin], field)
        if Gq.dim(top) == 0:
            return tuple(lin)
    return None


def regular_sequence_test(variables: Sequence[str], forms: Sequence, check_to: int | None = None,
                          field: FieldSpec | None = None, seed: int = 0) -> RegularityVerdict:
    """Decide whether homogeneous forms are a regular sequence in ``k[variables]``.

    The graded Hilbert function of the quotient is compared with the
    complete-intersection series through ``check_to``; any difference proves
    the sequence is not regular.  Agreement through ``sum(a_i - 1) + 1`` is
    upgraded to a certificate by exhibiting linear forms that make the
    quotient Artinian.
    """
    field = field or FieldSpec()
    ring = RingSpec(tuple(variables), None, field)
    forms = [ring.series(f) for f in forms]
    if any(f.is_zero() or not f.is_homogeneous() or f.degree() < 1 for f in forms):
        raise ValueError("forms must be nonzero homogeneous of positive degree")
    m = ring.nvars
    degrees = [f.degree() for f in forms]
    bound = sum(a - 1 for a in degrees) + 1
    if check_to is None:
        check_to = bound
    if len(forms) > m:
        return RegularityVerdict("NotRegular", 0)
    G = GradedQuotient(variables, [f.terms for f in forms], field)
    hf = graded_hf(G, check_to).values
    expected = tuple(ci_series(degrees, m, check_to))
    for d, (a, b) in enumerate(zip(hf, expected)):
        if a != b:
            return RegularityVerdict("NotRegular", d, hf, expected)
    if check_to < bound:
        return RegularityVerdict("Inconclusive", None, hf, expected)
    lin = _artinian_certificate(variables, field, forms, random.Random(seed))
    if lin is None:
        return RegularityVerdict("Inconclusive", None, hf, expected)
    return RegularityVerdict("RegularCertified", None, hf, expected, lin)
