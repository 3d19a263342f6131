"""Numerical semigroup rings ``k[[t^a1, ..., t^ak]]`` as a combinatorial oracle.

The m-adic filtration of a semigroup ring is monomial: ``m^n`` is spanned by
``t^s`` with ``s`` a sum of at least ``n`` generators.  Hilbert functions are
therefore counts of integers, with no linear algebra involved, which makes
this module a check on :mod:`mcmhilbert.locring` rather than a client of it.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .locring import HilbertVector, QuotientPresentation, hilbert_function


class GcdNotOne(ValueError):
    pass


@dataclass(frozen=True)
class NumericalSemigroup:
    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    frobenius: int
    apery: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def embedding_dimension(self) -> int:
        return len(self.generators)

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def __contains__(self, s: int) -> bool:
        if s < 0:
            return False
        return s > self.frobenius or s not in set(self.gaps)


def _members(gens: Sequence[int], bound: int) -> list[bool]:
    """Membership table of the monoid generated by ``gens`` on ``[0, bound)``."""
    ok = [False] * bound
    if bound:
        ok[0] = True
    for s in range(1, bound):
        ok[s] = any(s >= a and ok[s - a] for a in gens)
    return ok


def minimal_generators(gens: Iterable[int]) -> tuple[int, ...]:
    gens = sorted(set(gens))
    out = []
    for a in gens:
        if not _members(out, a + 1)[a] if out else True:
            out.append(a)
    return tuple(out)


def semigroup_closure(generators: Iterable[int]) -> NumericalSemigroup:
    """Gaps, Frobenius number and Apéry set (w.r.t. the multiplicity)."""
    gens = sorted(set(int(a) for a in generators))
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    if reduce(math.gcd, gens) != 1:
        raise GcdNotOne(f"gcd{tuple(gens)} != 1")
    minimal = minimal_generators(gens)
    if minimal != tuple(gens):
        warnings.warn(f"non-minimal generators {tuple(gens)} normalized to {minimal}", stacklevel=2)
    e = minimal[0]
    # every integer >= (e-1)*(a_k-1) is representable (Schur's bound)
    bound = (e - 1) * (minimal[-1] - 1) + e + 1
    ok = _members(minimal, bound)
    gaps = tuple(s for s in range(bound) if not ok[s])
    frob = gaps[-1] if gaps else -1
    apery = []
    for res in range(e):
        apery.append(next(s for s in range(res, bound, e) if ok[s]))
    return NumericalSemigroup(minimal, gaps, frob, tuple(apery))


@dataclass(frozen=True)
class SumsetFiltration:
    """``S_n`` = sums of at least ``n`` generators, listed on ``[0, bound)``."""

    generators: tuple[int, ...]
    bound: int
    layers: tuple[frozenset, ...]

    def __getitem__(self, n):
        return self.layers[n]


def _max_length(gens, bound) -> list[int]:
    """``nu(s)``: the largest number of generators summing to ``s`` (-1 if ``s`` is a gap)."""
    nu = [-1] * bound
    nu[0] = 0
    for s in range(1, bound):
        best = -1
        for a in gens:
            if s >= a and nu[s - a] >= 0:
                best = max(best, nu[s - a] + 1)
        nu[s] = best
    return nu


def sumset_filtration(generators: Iterable[int], n_max: int) -> SumsetFiltration:
    S = semigroup_closure(generators)
    # s >= F + 1 + (n_max+1)*a_k has at least n_max+1 summands, so S_0..S_{n_max+1}
    # are decided on this window
    bound = S.frobenius + 1 + (n_max + 1) * S.generators[-1] + 1
    nu = _max_length(S.generators, bound)
    layers = tuple(frozenset(s for s in range(bound) if nu[s] >= n) for n in range(n_max + 2))
    return SumsetFiltration(S.generators, bound, layers)


def semigroup_hf(generators: Iterable[int], n_max: int) -> HilbertVector:
    """``H(n) = |S_n minus S_(n+1)|`` for ``n = 0..n_max``."""
    filt = sumset_filtration(generators, n_max)
    values = tuple(len(filt[n] - filt[n + 1]) for n in range(n_max + 1))
    return HilbertVector(values, n_max)


@dataclass(frozen=True)
class PresentationVerdict:
    verified: bool
    failing_relation: int | None = None
    mismatch_degree: int | None = None
    semigroup_hf: tuple[int, ...] = ()
    local_hf: tuple[int, ...] = ()

    def __bool__(self):
        return self.verified


def relation_vanishes(generators: Sequence[int], terms: dict) -> bool:
    """Does the polynomial vanish under ``X_i -> t^(a_i)``?  Exact exponent bookkeeping."""
    image: dict[int, object] = {}
    for e, c in terms.items():
        s = sum(k * a for k, a in zip(e, generators))
        image[s] = image.get(s, 0) + c
    return all(v == 0 for v in image.values())


def verify_presentation(generators: Sequence[int], candidate: QuotientPresentation, n_max: int) -> PresentationVerdict:
    """Check a candidate presentation ``k[[X_1..X_k]]/(relations)`` of the semigroup ring."""
    gens = tuple(generators)
    if len(gens) != candidate.ring.nvars:
        raise ValueError("need exactly one variable per generator")
    for i, f in enumerate(candidate.polynomials):
        if not relation_vanishes(gens, f.terms):
            return PresentationVerdict(False, failing_relation=i)
    sh = semigroup_hf(gens, n_max).values
    lh = candidate.hilbert_function(n_max).values
    for n, (a, b) in enumerate(zip(sh, lh)):
        if a != b:
            return PresentationVerdict(False, mismatch_degree=n, semigroup_hf=sh, local_hf=lh)
    return PresentationVerdict(True, semigroup_hf=sh, local_hf=lh)


@dataclass(frozen=True)
class ScanItem:
    generators: tuple[int, ...]
    hf: tuple[int, ...]
    first_violation: int | None


@dataclass
class ScanReport:
    checked: int
    embdim3_checked: int
    violations: list[ScanItem]
    items: list[ScanItem]

    @property
    def elias_consistent(self) -> bool:
        return not any(len(v.generators) == 3 for v in self.violations)


def _first_violation(values) -> int | None:
    for n in range(len(values) - 1):
        if values[n] > values[n + 1]:
            return n
    return None


def hf_window(S: NumericalSemigroup) -> int:
    """Degrees past which ``H`` is constant: the reduction number is below the multiplicity."""
    return S.multiplicity + 1


def enumerate_semigroups(max_multiplicity: int, max_embdim: int = 3, max_frobenius: int = 30,
                         min_embdim: int = 2):
    """All numerical semigroups with the given bounds, by generator tuple.

    Minimal generators other than the multiplicity lie in the Apéry set, hence
    below ``F + e``, so the search space is finite.
    """
    for e in range(2, max_multiplicity + 1):
        top = max_frobenius + e
        for k in range(max(min_embdim, 2), min(max_embdim, e) + 1):
            for rest in itertools.combinations(range(e + 1, top + 1), k - 1):
                gens = (e,) + rest
                if reduce(math.gcd, gens) != 1:
                    continue
                if len({a % e for a in rest}) != len(rest):
                    continue
                if minimal_generators(gens) != gens:
                    continue
                S = semigroup_closure(gens)
                if S.frobenius <= max_frobenius:
                    yield S


def monotonicity_scan(candidates: Iterable[Sequence[int]] | None = None, *, max_multiplicity: int = 8,
                      max_embdim: int = 3, max_frobenius: int = 30, min_embdim: int = 2) -> ScanReport:
    """Hilbert-function monotonicity over a finite family of semigroup rings.

    With ``candidates`` each tuple is checked in the given order; otherwise the
    family of :func:`enumerate_semigroups` is scanned in generator-tuple order.
    """
    if candidates is not None:
        sgs = [semigroup_closure(c) for c in candidates]
    else:
        sgs = enumerate_semigroups(max_multiplicity, max_embdim, max_frobenius, min_embdim)
    items, violations = [], []
    emb3 = 0
    for S in sgs:
        n_max = hf_window(S)
        values = semigroup_hf(S.generators, n_max).values
        item = ScanItem(S.generators, values, _first_violation(values))
        items.append(item)
        if S.embedding_dimension == 3:
            emb3 += 1
        if item.first_violation is not None:
            violations.append(item)
    return ScanReport(len(items), emb3, violations, items)
