"""Matrix factorizations, minimal resolutions, Betti numbers and complexity."""
from mcmhilbert.homalg import MatrixFactorization, betti_table, complexity_estimate, mf_resolution, minimal_resolution, mf_verify
from mcmhilbert.locring import ModulePresentation, QuotientPresentation, RingSpec, hilbert_function

ring = RingSpec(("x", "y"), 12)
mf = MatrixFactorization(ring, "x^3 - y^4", [["x", "y"], ["y^3", "x^2"]], [["x^2", "-y"], ["-y^3", "x"]])
print("phi*psi = psi*phi = f:", mf_verify(mf))

# over the hypersurface the resolution of coker(phi) alternates phi, psi
F = mf_resolution(mf, 4)
for i, d in enumerate(F.differentials, 1):
    print(f"d_{i} =", [[str(x) for x in row] for row in d])

M = mf.cokernel()
bt = betti_table(M, 6)
print("Betti", bt.betti, "certified through", bt.certified_to)
print("complexity", complexity_estimate(bt))
print("HF of coker(phi)", hilbert_function(M, 10).values)

# the residue field of a codimension two complete intersection grows linearly
ci = QuotientPresentation(RingSpec(("x", "y"), 10), ["x^2", "y^2"])
k = ModulePresentation.residue_field(ci)
bt = betti_table(k, 6)
print("Betti of k over k[[x,y]]/(x^2,y^2)", bt.betti, complexity_estimate(bt))
print("ranks of a resolution computed directly", minimal_resolution(k, 4).ranks)
