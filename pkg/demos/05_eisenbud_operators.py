"""Eisenbud operators, their action on Ext and a change of generators."""
from mcmhilbert.eisops import (
    base_change_operators,
    ext_action,
    finite_generation_window,
    lift_complex,
    parameter_search,
    solve_operators,
)
from mcmhilbert.homalg import minimal_resolution
from mcmhilbert.locring import ModulePresentation, QuotientPresentation, RingSpec


def show(fam, j):
    return {i: [[str(x) for x in row] for row in fam.constant_part(j, i).tolist()] for i in fam.indices()}


A = QuotientPresentation(RingSpec(("x", "y"), 10), ["x^2", "y^2"])
M = ModulePresentation(A, [["x"]])

F = minimal_resolution(M, 6)
L = lift_complex(F)
fam = solve_operators(L)  # d~^2 = x^2 t~_1 + y^2 t~_2, checked exactly
for j in range(fam.c):
    print(f"t_{j + 1} mod m:", show(fam, j))

E = ext_action(F, fam)
print("dim Ext^i", E.dims, "operators commute:", E.commutes())
print(finite_generation_window(E))

xi = parameter_search(E)
print("parameter xi =", " + ".join(f"{b}*t_{j + 1}" for j, b in enumerate(xi.coeffs)), "on degrees", xi.window)

# new generators g = alpha^-1 f come with operators t' = alpha^tr t
new = base_change_operators([[1, 0], [1, 1]], fam)
print("g =", [str(g) for g in new.relations])
print("t'_1 mod m:", show(new, 0))
