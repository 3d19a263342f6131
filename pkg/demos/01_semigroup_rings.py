"""Numerical semigroup rings k[[t^a1, ..., t^ak]] and their Hilbert functions."""
from mcmhilbert.locring import QuotientPresentation, RingSpec
from mcmhilbert.numsgp import semigroup_closure, semigroup_hf, verify_presentation

S = semigroup_closure((6, 7, 15))
print("generators", S.generators, "multiplicity", S.multiplicity, "embedding dimension", S.embedding_dimension)
print("Frobenius number", S.frobenius)
print("gaps", S.gaps)

# H(n) counts semigroup elements of order exactly n
print("HF", semigroup_hf(S.generators, 9).values)

# a presentation is checked, not trusted: relations must vanish on the
# parametrization and the local Hilbert function must match
A = QuotientPresentation(RingSpec(("X", "Y", "Z"), 12), ["Y^3 - X*Z", "X^5 - Z^2"])
print("presentation verified:", verify_presentation(S.generators, A, 9).verified)

wrong = QuotientPresentation(RingSpec(("X", "Y", "Z"), 12), ["Y^3 - X*Z", "X^5 - Z^3"])
v = verify_presentation(S.generators, wrong, 9)
print("wrong presentation verified:", v.verified, "failing relation", v.failing_relation)
