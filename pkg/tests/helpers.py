"""Shared fixtures: semigroup presentations and the module corpus."""
import itertools
import math
import random
from functools import reduce

from mcmhilbert.homalg import MatrixFactorization
from mcmhilbert.locring import ModulePresentation, QuotientPresentation, RingSpec
from mcmhilbert.numsgp import minimal_generators


def representations(s, gens):
    """All exponent vectors ``u`` with ``sum u_i gens_i == s``."""
    if not gens:
        return [()] if s == 0 else []
    out = []
    a = gens[0]
    for k in range(s // a + 1):
        for rest in representations(s - k * a, gens[1:]):
            out.append((k,) + rest)
    return out


def binomial_presentation(gens, D):
    """Binomials ``X_i^(c_i) - X^u`` for every representation ``u`` of ``c_i a_i``
    by the other generators, ``c_i`` minimal.  For embedding dimension <= 3 they
    contain a generating set of the toric ideal; the HF comparison confirms it."""
    k = len(gens)
    names = tuple("XYZW"[:k])
    ring = RingSpec(names, D)
    rels = []
    for i, a in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        c = 1
        while not representations(c * a, others):
            c += 1
        for u in representations(c * a, others):
            u = u[:i] + (0,) + u[i:]
            lhs = tuple(c if j == i else 0 for j in range(k))
            rels.append({lhs: 1, u: -1})
    # X_i^c - X^u for each i; many coincide up to sign
    seen, uniq = set(), []
    for r in rels:
        key = frozenset(r)
        if key not in seen:
            seen.add(key)
            uniq.append(r)
    return QuotientPresentation(ring, uniq, regular=False)


def random_semigroups(count, seed, max_multiplicity=10, max_embdim=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        e = rng.randint(2, max_multiplicity)
        k = rng.randint(2, min(max_embdim, e))
        rest = sorted(rng.sample(range(e + 1, 3 * e + 1), k - 1))
        gens = (e,) + tuple(rest)
        if reduce(math.gcd, gens) != 1 or minimal_generators(gens) != gens or gens in out:
            continue
        out.append(gens)
    return out


MF_LIST = [
    ("xy", "x*y", [["x"]], [["y"]]),
    ("y3", "y^3", [["y"]], [["y^2"]]),
    ("cusp", "x^2 - y^3", [["x", "y"], ["y^2", "x"]], [["x", "-y"], ["-y^2", "x"]]),
    ("a3", "x^2 - y^4", [["x - y^2"]], [["x + y^2"]]),
    ("a3_2x2", "x^2 - y^4", [["x", "y^2"], ["y^2", "x"]], [["x", "-y^2"], ["-y^2", "x"]]),
    ("e6", "x^3 - y^4", [["x", "y"], ["y^3", "x^2"]], [["x^2", "-y"], ["-y^3", "x"]]),
]


def factorization(name, D=12, field=None):
    for n, f, phi, psi in MF_LIST:
        if n == name:
            ring = RingSpec(("x", "y"), D) if field is None else RingSpec(("x", "y"), D, field)
            return MatrixFactorization(ring, f, phi, psi)
    raise KeyError(name)


def module_corpus(D=10):
    """Modules used for stability and operator checks, with a label."""
    xy = RingSpec(("x", "y"), D)
    xyz = RingSpec(("x", "y", "z"), D)
    node = QuotientPresentation(xy, ["x*y"])
    ci = QuotientPresentation(xy, ["x^2", "y^2"])
    ci3 = QuotientPresentation(xyz, ["x^2", "y^2"])
    out = [
        ("k/xy", ModulePresentation.residue_field(node)),
        ("coker x/xy", ModulePresentation(node, [["x"]])),
        ("k/(x2,y2)", ModulePresentation.residue_field(ci)),
        ("coker x/(x2,y2)", ModulePresentation(ci, [["x"]])),
        ("coker x/(x2,y2) in 3 vars", ModulePresentation(ci3, [["x"]])),
        ("free 2/xy", ModulePresentation.free(node, 2)),
    ]
    for name, *_ in MF_LIST:
        out.append((f"mf {name}", factorization(name, D).cokernel()))
    return out
