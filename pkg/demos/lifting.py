"""Lift a joint measure along a refinement of a diagram.

The target diagram is a square; the source splits one point of each top space
in two. Given a joint measure downstairs and marginals upstairs that agree
with it, the LP finds a joint measure upstairs matching both.

Run: python3 demos/lifting.py
"""

from fractions import Fraction as F

from multicomm import Measure, SpaceMap, compute_limit, diagram_from_data, lift_diagram_morphism, make_family
from multicomm import validate_morphism

base = diagram_from_data(
    ["a", "b", "c"],
    [("a", "c"), ("b", "c")],
    {"a": ["0", "1"], "b": ["0", "1"], "c": ["*"]},
    {("a", "c"): {"0": "*", "1": "*"}, ("b", "c"): {"0": "*", "1": "*"}},
)
fine = diagram_from_data(
    ["a", "b", "c"],
    [("a", "c"), ("b", "c")],
    {"a": ["0", "1x", "1y"], "b": ["0", "1"], "c": ["*"]},
    {("a", "c"): {"0": "*", "1x": "*", "1y": "*"}, ("b", "c"): {"0": "*", "1": "*"}},
)
collapse = {
    "a": SpaceMap(fine.spaces["a"], base.spaces["a"], {"0": "0", "1x": "1", "1y": "1"}),
    "b": SpaceMap(fine.spaces["b"], base.spaces["b"], {"0": "0", "1": "1"}),
    "c": SpaceMap(fine.spaces["c"], base.spaces["c"], {"*": "*"}),
}
morphism = validate_morphism(fine, base, collapse)

L = compute_limit(base)
tau0 = Measure(L.space, {("0", "0", "*"): F(1, 2), ("1", "1", "*"): F(1, 2)})
family = make_family(fine, {
    "a": Measure(fine.spaces["a"], {"0": F(1, 2), "1x": F(1, 3), "1y": F(1, 6)}),
    "b": Measure(fine.spaces["b"], {"0": F(1, 2), "1": F(1, 2)}),
    "c": Measure(fine.spaces["c"], {"*": 1}),
})

result = lift_diagram_morphism(morphism, tau0, family)
print("lift found:", result.feasible)
for point, weight in result.measure.weights.items():
    print(f"  {point}: {weight}")
