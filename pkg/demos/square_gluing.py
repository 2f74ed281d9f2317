"""Two marginals over a shared quotient, glued into one joint measure.

Run: python3 demos/square_gluing.py
"""

from fractions import Fraction as F

from multicomm import Measure, build_chi, check_chi_surjective, diagram_from_data, glue_family, make_family

# Two coins that must land on the same colour: a and b each map onto the colour c.
square = diagram_from_data(
    ["a", "b", "c"],
    [("a", "c"), ("b", "c")],
    {"a": ["r1", "r2", "g"], "b": ["R", "G1", "G2"], "c": ["red", "green"]},
    {
        ("a", "c"): {"r1": "red", "r2": "red", "g": "green"},
        ("b", "c"): {"R": "red", "G1": "green", "G2": "green"},
    },
)

family = make_family(square, {
    "a": Measure(square.spaces["a"], {"r1": F(1, 4), "r2": F(1, 4), "g": F(1, 2)}),
    "b": Measure(square.spaces["b"], {"R": F(1, 2), "G1": F(1, 3), "G2": F(1, 6)}),
    "c": Measure(square.spaces["c"], {"red": F(1, 2), "green": F(1, 2)}),
})

result = glue_family(square, family)
print(f"method: {result.method.value} (diagram class {result.diagram_class.value})")
for point, weight in result.measure.weights.items():
    print(f"  {point}: {weight}")

# Gluing worked for this family; the vertex check says it works for every consistent family.
verdict = check_chi_surjective(build_chi(square))
print(f"every consistent family glues: {verdict.label} ({len(verdict.vertices)} vertices checked)")
