"""A diagram where consistent marginals need not come from any joint measure.

Two copies of {00, 01, 10, 11} share both bit projections. The joint space
only contains matching pairs, so the two top marginals must coincide; the
family below has equal bit marginals but different tops, and the exact LP
returns a Farkas certificate instead of a witness.

Run: python3 demos/diamond_boundary.py
"""

from fractions import Fraction as F

from multicomm import Measure, build_chi, check_chi_surjective, diagram_from_data, glue_family, make_family
from multicomm.chi import preimage_system

pairs = ["00", "01", "10", "11"]
first = {p: p[0] for p in pairs}
second = {p: p[1] for p in pairs}
diamond = diagram_from_data(
    ["a", "b", "c", "d"],
    [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    {"a": pairs, "b": pairs, "c": ["0", "1"], "d": ["0", "1"]},
    {("a", "c"): first, ("a", "d"): second, ("b", "c"): first, ("b", "d"): second},
)

family = make_family(diamond, {
    "a": Measure.uniform(diamond.spaces["a"]),
    "b": Measure(diamond.spaces["b"], {"00": F(1, 2), "11": F(1, 2)}),
    "c": Measure.uniform(diamond.spaces["c"]),
    "d": Measure.uniform(diamond.spaces["d"]),
})

chi = build_chi(diamond)
result = glue_family(diamond, family, chi)
print(f"method: {result.method.value}")
y_ub, y_eq = result.certificate.farkas
print("Farkas multipliers on the equations:", [str(v) for v in y_eq])
print("certificate re-verifies:", result.certificate.verify(preimage_system(chi, family.vector())))

verdict = check_chi_surjective(chi)
print(f"{verdict.label}: {len(verdict.unreached)} of {len(verdict.vertices)} vertices have no preimage")
