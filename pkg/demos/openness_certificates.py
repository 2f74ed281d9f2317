"""Certify that marginalization is an open map, face by face, and estimate its modulus.

Run: python3 demos/openness_certificates.py
"""

from multicomm import build_chi, check_chi_open, diagram_from_data

square = diagram_from_data(
    ["a", "b", "c"],
    [("a", "c"), ("b", "c")],
    {"a": ["0", "1"], "b": ["0", "1"], "c": ["*"]},
    {("a", "c"): {"0": "*", "1": "*"}, ("b", "c"): {"0": "*", "1": "*"}},
)

chi = build_chi(square)
report = check_chi_open(chi, sample_count=50)
print(f"{report.label} onto the {report.onto}, {len(report.exact.faces)} faces certified")

# One face in detail: the edge between two point masses.
cert = next(c for c in report.exact.faces if len(c.face) == 2)
print("face", cert.face, "at", [str(v) for v in cert.point])
for target, source in cert.directions:
    print("  image direction", [str(v) for v in target], "<- domain direction", [str(v) for v in source])

print(f"sampled sup-norm modulus: {report.sampled.modulus:.4f} at radius {report.sampled.radius}")
