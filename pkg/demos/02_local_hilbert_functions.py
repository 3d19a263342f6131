"""Hilbert functions of local rings and modules, computed modulo n^D."""
from mcmhilbert.locring import ModulePresentation, QuotientPresentation, RingSpec, hilbert_function, monotonicity_report

ring = RingSpec(("X", "Y", "Z"), 12)
A = QuotientPresentation(ring, ["Y^3 - X*Z", "X^5 - Z^2"])

h = A.hilbert_function(9)
print("H_A", h.values, "valid through n =", h.valid_to)
print(monotonicity_report(h))

# asking for degrees the truncation cannot certify is an error, never a guess
try:
    A.hilbert_function(12)
except Exception as exc:
    print(type(exc).__name__, exc)

# modules: the cokernel of a matrix over A
node = QuotientPresentation(RingSpec(("x", "y"), 10), ["x*y"])
M = ModulePresentation(node, [["x"]])
print("H_M for coker(x) over k[[x,y]]/(xy)", hilbert_function(M, 8).values)
print("H of A^2", hilbert_function(ModulePresentation.free(node, 2), 8).values)
