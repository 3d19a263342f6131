"""Associated graded rings: verify a candidate, find a socle element, test initial forms."""
from mcmhilbert.grmod import GradedQuotient, graded_hf, regular_sequence_test, socle_witness, verify_assoc_graded
from mcmhilbert.locring import QuotientPresentation, RingSpec

A = QuotientPresentation(RingSpec(("X", "Y", "Z"), 12), ["Y^3 - X*Z", "X^5 - Z^2"])
G = GradedQuotient(("X", "Y", "Z"), ["X*Z", "Y^6", "Y^3*Z", "Z^2"])

print("graded HF", graded_hf(G, 9).values)
verdict = verify_assoc_graded(A, G, 9)
print("G is the associated graded ring through degree 9:", verdict.verified)
for h, element, _ in verdict.witnesses:
    print(f"  {h} is the initial form of {element}")

# a homogeneous element killed by every variable proves depth G = 0
cert = socle_witness(G, 4)
print("socle element", cert.element, "in degree", cert.degree)
for var, product, mult in cert.annihilation:
    print(f"  {var} * {cert.element} = {product} =", " + ".join(f"({m})*({h})" for m, h in zip(mult, G.generators) if not m.is_zero()))

# the initial forms of the relations are not a regular sequence
print("(XZ, Z^2):", regular_sequence_test(("X", "Y", "Z"), ["X*Z", "Z^2"]).status)
print("(X^2, Y^3):", regular_sequence_test(("X", "Y", "Z"), ["X^2", "Y^3"]).status)
