"""Trade the relations for new ones so that the module has pd <= 1 over a
hypersurface-like intermediate ring P."""
from mcmhilbert.eisops import strict_reduction
from mcmhilbert.locring import ModulePresentation, QuotientPresentation, RingSpec

A = QuotientPresentation(RingSpec(("x", "y", "z"), 10), ["x^2", "y^2"])
sr = strict_reduction(A, ModulePresentation(A, [["x"]]))
print("xi coefficients", [str(b) for b in sr.xi.coeffs])
print("g =", [str(g) for g in sr.g], "initial forms", [str(h) for h in sr.g_initial])
print("f = alpha g exactly:", sr.round_trip)
print("initial forms regular:", sr.regular.status)
print("Betti over P", sr.pd_evidence["betti"], "certified through", sr.pd_evidence["certified_to"],
      "at D =", sr.pd_evidence["D"])
print("dim P =", sr.dim_P, "hypothesis dim P = dim A + 1 holds:", sr.hypothesis_ok)

# relations of different orders: the higher order one moves to the front
B = QuotientPresentation(RingSpec(("x", "y", "z"), 10), ["x^2", "y^3"])
sr = strict_reduction(B, ModulePresentation(B, [["x"]]))
print("order", sr.order, "g* =", [str(h) for h in sr.g_initial], "pd evidence", sr.pd_evidence["betti"])
