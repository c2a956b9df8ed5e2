"""Decomposing an association entry over the paths of a concentration graph.

Builds a five-variable model from edge partial correlations, then walks
through the central identity of the package: the covariance (or correlation,
or inflated correlation) between two variables equals the sum of the weights
of all simple paths joining them in the graph. Run as a script:

    python demos/01_path_decomposition.py
"""

from pathweights import Graph, Measure, Model, decompose, subset_share

# a small network: a 4-cycle with one chord plus a pendant vertex
#
#   a --- b
#   |     |        e --- d
#   c --- d --- e  (d is the articulation point)
graph = Graph(
    ["a", "b", "c", "d", "e"],
    [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")],
)
model = Model.from_partial_correlations(
    graph,
    {
        ("a", "b"): 0.40,
        ("a", "c"): 0.25,
        ("b", "d"): 0.35,
        ("c", "d"): -0.20,
        ("d", "e"): 0.50,
    },
)

print("covariance matrix (unit concentration diagonal):")
for row in model.sigma.values.round(3):
    print(" ", row)

for kind in (Measure.COVARIANCE, Measure.CORRELATION, Measure.INFLATED_CORRELATION):
    report = decompose(model, "a", "d", kind=kind)
    print(f"\n{kind.value} decomposition of (a, d): target {report.target:+.4f}")
    for entry in report.entries:
        print(f"  {str(entry.path):<18} weight {entry.weight:+.4f}  share {entry.share:.1%}")
    print(f"  path sum reproduces the entry with residual {report.residual:.1e}")
    print(f"  all weights share one sign: {report.same_signed}")

# a share question: how much of the a-d association avoids vertex b?
report = decompose(model, "a", "d", kind=Measure.INFLATED_CORRELATION)
avoiding_b = subset_share(report, lambda p: "b" not in p.sequence)
print(f"\nshare of the a-d association carried by paths avoiding b: {avoiding_b:.1%}")

# restricting to a subset decomposes the *partial* association instead
restricted = decompose(model, "a", "d", restrict=["a", "b", "c", "d"])
print(f"\npartial covariance of (a, d) given e: {restricted.target:+.4f}")
print(f"paths confined to {{a, b, c, d}}: {len(restricted.entries)} "
      f"(residual {restricted.residual:.1e})")
