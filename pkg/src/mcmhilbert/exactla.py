"""Exact scalar arithmetic and dense/sparse exact linear algebra.

Scalars are plain Python objects: ``int`` residues in ``[0, p)`` for a prime
field, ``fractions.Fraction`` for the rationals.  Nothing here ever rounds.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` or ``fp:<p>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(None)
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<p>'")

    def __str__(self):
        return "q" if self.p is None else f"fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def signed(self, a) -> int | Fraction:
        """Representative for display: symmetric residue mod p, else the rational itself."""
        if self.p:
            return a - self.p if a > self.p // 2 else a
        return a

    def elements(self):
        """Iterate over a deterministic enumeration of field elements (finite prefix over Q)."""
        if self.p:
            yield from range(self.p)
        else:
            yield Fraction(0)
            k = 1
            while True:
                yield Fraction(k)
                yield Fraction(-k)
                k += 1


class ExactMatrix:
    """Dense rectangular matrix over a :class:`FieldSpec`.  Treated as immutable."""

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int) -> "ExactMatrix":
        return cls(field, [[0] * n for _ in range(m)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.ncols))

    def __repr__(self):
        body = "; ".join(" ".join(str(self.field.signed(x)) for x in r) for r in self.rows)
        return f"ExactMatrix[{self.nrows}x{self.ncols}]({body})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        F = self.field
        return ExactMatrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c) -> "ExactMatrix":
        F = self.field
        c = F(c)
        return ExactMatrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = sum(a * b for a, b in zip(r, c) if a and b)
                row.append(F(s) if F.p is None else s % F.p)
            out.append(row)
        return ExactMatrix(F, out, other.ncols)

    def apply(self, v: Sequence) -> list:
        F = self.field
        return [F(sum(a * b for a, b in zip(r, v))) for r in self.rows]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)


def rref(m: ExactMatrix) -> tuple[int, ExactMatrix, list[int]]:
    """Reduced row-echelon form.

    Pivot choice is the first nonzero entry scanning columns left to right, so
    the output is canonical.  Returns ``(rank, reduced, pivot_columns)``.
    """
    F = m.field
    p = F.p
    a = [list(r) for r in m.rows]
    pivots = []
    row = 0
    for col in range(m.ncols):
        pr = next((i for i in range(row, len(a)) if a[i][col]), None)
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = F.inv(a[row][col])
        a[row] = [F.mul(x, inv) for x in a[row]]
        prow = a[row]
        nz = [j for j in range(col, m.ncols) if prow[j]]
        for i in range(len(a)):
            if i != row and a[i][col]:
                c = a[i][col]
                ri = a[i]
                for j in nz:
                    v = ri[j] - c * prow[j]
                    ri[j] = v % p if p else v
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return len(pivots), ExactMatrix(F, a, m.ncols), pivots


def rank(m: ExactMatrix) -> int:
    return rref(m)[0]


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Basis of the right null space, one vector per free column of the rref."""
    F = m.field
    r, red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [F.zero()] * m.ncols
        v[free] = F.one()
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(red.rows[i][free])
        basis.append(v)
    return basis


def solve_linear(m: ExactMatrix, b: Sequence) -> list | None:
    """Some exact solution of ``m x = b``; ``None`` when ``b`` is not in the column space.

    The solution returned has every free variable set to zero.
    """
    F = m.field
    if len(b) != m.nrows:
        raise ValueError("right-hand side has wrong length")
    aug = ExactMatrix(F, [list(r) + [F(x)] for r, x in zip(m.rows, b)], m.ncols + 1)
    r, red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [F.zero()] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = red.rows[i][m.ncols]
    return x


def inverse(m: ExactMatrix) -> ExactMatrix | None:
    """Inverse of a square matrix, or ``None`` when singular."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("not square")
    F = m.field
    aug = ExactMatrix(F, [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.rows)], 2 * n)
    r, red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return ExactMatrix(F, [row[n:] for row in red.rows[:n]], n)


class EchelonBasis:
    """Sparse row-echelon basis of a subspace of F^n, grown one vector at a time.

    Vectors are ``{column: coefficient}`` dicts without zeros.  Each stored row
    is normalized so its pivot, the smallest column in its support, has
    coefficient 1.  Because columns are ordered by the caller, the number of
    pivots below a column index equals the rank of the projection onto those
    coordinates; the module relies on this with degree-ordered columns.

    With ``track=True`` every row remembers which inserted vectors (by tag) it
    is a combination of, so dependencies and membership certificates can be
    reported.
    """

    def __init__(self, field: FieldSpec, track: bool = False):
        self.field = field
        self.track = track
        self.rows: dict[int, dict] = {}
        self.prov: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: dict, combine: bool = False) -> tuple[dict, dict | None]:
        """Fully reduce ``v``: the remainder has no pivot column in its support.

        Returns ``(remainder, combination)``.  With ``combine`` (requires
        tracking) ``v = remainder + sum(combination[tag] * inserted[tag])``;
        otherwise the combination is ``None``.
        """
        p = self.field.p
        v = dict(v)
        comb = {} if combine else None
        rows = self.rows
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            row = rows[c]
            for k, b in row.items():
                nv = v.get(k, 0) - a * b
                if p:
                    nv %= p
                if nv:
                    if k not in v and k in rows:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
            if comb is not None:
                for t, b in self.prov[c].items():
                    nv = comb.get(t, 0) + a * b
                    if p:
                        nv %= p
                    if nv:
                        comb[t] = nv
                    else:
                        comb.pop(t, None)
        return v, comb

    def add(self, v: dict, tag=None) -> dict | None:
        """Insert ``v``.

        Returns ``None`` if ``v`` was independent.  If it was dependent returns
        the relation found: with tracking, a ``{tag: coef}`` dict summing to
        zero (always containing ``tag`` with coefficient 1); without tracking,
        an empty dict.
        """
        F = self.field
        rem, comb = self.reduce(v, combine=self.track)
        if not rem:
            if not self.track:
                return {}
            rel = {tag: F.one()}
            for t, b in comb.items():
                nv = F.sub(rel.get(t, 0), b)
                if nv:
                    rel[t] = nv
                else:
                    rel.pop(t, None)
            return rel
        piv = min(rem)
        inv = F.inv(rem[piv])
        self.rows[piv] = {k: F.mul(x, inv) for k, x in rem.items()}
        if self.track:
            # rem = v - sum comb*inserted, so the row is (v - comb)/rem[piv]
            combo = {tag: F.one()}
            for t, b in comb.items():
                nv = F.sub(combo.get(t, 0), b)
                if nv:
                    combo[t] = nv
                else:
                    combo.pop(t, None)
            self.prov[piv] = {t: F.mul(x, inv) for t, x in combo.items()}
        return None

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def count_below(self, col: int) -> int:
        """Number of pivots with index < col."""
        return sum(1 for c in self.rows if c < col)


def sparse_rank(field: FieldSpec, vectors: Iterable[dict]) -> int:
    eb = EchelonBasis(field)
    for v in vectors:
        eb.add(v)
    return len(eb)
