"""Inflation factors, weight factorization, and sharp weight bounds.

Every path weight factors into two interpretable pieces: the weight computed
after linearly adjusting for all off-path variables (local information), and
an inflation factor measuring how strongly the path's variables are tied to
the rest of the network (global information). This demo also shows the sharp
bounds on weights and the scale-free normalized weight in [-1, 1].

    python demos/02_inflation_and_bounds.py
"""

from pathweights import (
    Graph,
    Measure,
    Model,
    Path,
    factorize,
    global_collinearity,
    inflation_factor,
    inflation_factor_identities,
    normalized_weight,
    weight,
    weight_bounds,
)

graph = Graph(
    ["a", "b", "c", "d", "e"],
    [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e"), ("b", "c")],
)
model = Model.from_partial_correlations(
    graph,
    {
        ("a", "b"): 0.40,
        ("a", "c"): 0.25,
        ("b", "c"): 0.15,
        ("b", "d"): 0.35,
        ("c", "d"): -0.20,
        ("d", "e"): 0.50,
    },
)

# inflation factor of {a, b} on the remaining variables, three ways
ident = inflation_factor_identities(model, ["a", "b"])
print("inflation factor of {a, b} on the rest, all equivalent routes:")
print(f"  determinant ratio    {ident.determinant_ratio:.10f}")
print(f"  partial ratio        {ident.partial_ratio:.10f}")
print(f"  symmetric ratio      {ident.symmetric_ratio:.10f}")
print(f"  concentration ratio  {ident.concentration_ratio:.10f}")

print(f"\nglobal collinearity (variance scaled):         "
      f"{global_collinearity(model, 'variance'):.4f}")
print(f"global collinearity (partial-variance scaled): "
      f"{global_collinearity(model, 'partial-variance'):.4f}")

# factorize a path weight: weight = partial weight x inflation
path = Path(("a", "b", "d"))
fb = factorize(model, path)
print(f"\npath {path}:")
print(f"  covariance weight  {fb.weight:+.5f}")
print(f"  partial weight     {fb.partial_weight:+.5f}   (adjusted for c and e)")
print(f"  inflation factor   {fb.inflation:.5f}")
print(f"  product check      {fb.partial_weight * fb.inflation:+.5f}")

# the same split for the correlation measure needs an endpoint correction
fc = factorize(model, path, kind=Measure.CORRELATION)
print(f"  correlation weight {fc.weight:+.5f} = {fc.partial_weight:+.5f}"
      f" * {fc.inflation:.5f} / {fc.endpoint_inflation:.5f}")

# bounds: for the inflated-correlation measure every path in the graph shares
# the same bounds, so weights of different pairs are directly comparable
print("\nweight bounds:")
for kind in (Measure.COVARIANCE, Measure.CORRELATION, Measure.INFLATED_CORRELATION):
    lo, hi = weight_bounds(model, path, kind)
    w = weight(model, path, kind)
    print(f"  {kind.value:<21} {lo:+.4f} <= {w:+.4f} <= {hi:+.4f}")

phi = normalized_weight(model, path)
print(f"\nnormalized weight of {path}: {phi:+.4f}  (always within [-1, 1])")
