"""Grouping stations with K-means.

Seeded Forgy initialisation, Lloyd iterations capped at ``max_iterations``.
The SSE trace never goes up.
"""
from fieldroute.datasets import load_istanbul
from fieldroute.kmeans import kmeans_fit

stations = load_istanbul()

for k, iters in [(3, 10), (5, 10), (8, 20)]:
    fit = kmeans_fit(stations, k, max_iterations=iters, rng_seed=0)
    print(f"k={k}: sizes {fit.sizes.tolist()}, SSE {fit.sse:.5f} deg^2, "
          f"{fit.iterations_run} iterations, converged={fit.converged}")
    print("   SSE trace:", [round(s, 5) for s in fit.sse_trace])

fit = kmeans_fit(stations, 5, rng_seed=0)
for c, centre in enumerate(fit.centroid_coords):
    names = [stations[i].name for i in fit.members(c)[:3]]
    print(f"cluster {c} at ({centre.lat:.4f}, {centre.lon:.4f}): {', '.join(names)}, ...")
