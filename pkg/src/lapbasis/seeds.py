"""Seed selection (curvature extremum + farthest point sampling) and the
coverage loop that grows a basis set until supports cover the mesh."""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla
from scipy.sparse import csgraph

from . import numerics
from .errors import NoProgress, ZeroField
from .fields import BasisSet, ScalarField, field_values
from .ioutil import atomic_write_text
from .mesh import vertex_distances

DEFAULT_TAU = 1e-3

METRIC_CHOICES = ("euclidean", "graph_geodesic")


@dataclass
class SeedSet:
    """Ordered seed vertices; order is selection order."""

    indices: list
    method: str = "manual"
    start: int = None
    metric: str = "euclidean"

    def __post_init__(self):
        idx = [int(i) for i in self.indices]
        if len(set(idx)) != len(idx):
            raise ValueError("seed indices must be distinct")
        self.indices = idx

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i):
        return self.indices[i]


def curvature_field(mesh, op):
    """Pointwise mean-curvature magnitude 0.5 * |B^{-1} L p|.

    The Laplacian of the coordinate functions is the mean-curvature normal;
    its half-norm is H (1 on the unit sphere, 0 on a plane).
    """
    Lm = numerics.matrix_data(op.L)
    Bm = numerics.matrix_data(op.B).tocsc()
    LP = np.asarray(Lm @ mesh.vertices)
    d = Bm.diagonal()
    if Bm.nnz == len(d):
        HN = LP / d[:, None]
    else:
        HN = spla.splu(Bm).solve(LP)
    return ScalarField(0.5 * np.linalg.norm(HN, axis=1), tag="curvature")


def farthest_point_sampling(mesh, k, start=None, metric="euclidean", op=None):
    """Greedy spread: each new seed maximises the minimum distance to the
    chosen ones; ties break to the lowest vertex index.

    start=None picks the curvature maximum (assembling a default operator
    when none is supplied).
    """
    n = mesh.n_vertices
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    if metric not in METRIC_CHOICES:
        raise ValueError(f"unknown metric {metric!r}")
    if start is None:
        if op is None:
            from .laplacian import assemble

            op = assemble(mesh)
        start = int(np.argmax(field_values(curvature_field(mesh, op))))
    if not 0 <= start < n:
        raise ValueError("start vertex out of range")

    chosen = [int(start)]
    dist = field_values(vertex_distances(mesh, chosen[0], metric))
    taken = np.zeros(n, dtype=bool)
    taken[chosen[0]] = True
    while len(chosen) < k:
        # argmax returns the first (lowest-index) maximiser
        nxt = int(np.argmax(np.where(taken, -np.inf, dist)))
        chosen.append(nxt)
        taken[nxt] = True
        dist = np.minimum(
            dist, field_values(vertex_distances(mesh, nxt, metric))
        )
    return SeedSet(chosen, method="fps", start=int(start), metric=metric)


def support(f, tau=DEFAULT_TAU):
    """Vertices where |f| exceeds tau times the peak magnitude."""
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    fv = np.abs(field_values(f))
    peak = fv.max()
    if peak == 0.0:
        raise ZeroField("support of the zero field is undefined")
    return np.flatnonzero(fv > tau * peak)


@dataclass
class CoverageResult:
    """Outcome of the coverage loop: final coverage fraction is 1."""

    seeds: SeedSet
    basis: BasisSet
    history: list = field(default_factory=list)
    tau: float = DEFAULT_TAU

    @property
    def iterations(self):
        return len(self.history)


def coverage_loop(mesh, op, generator, k0=10, tau=DEFAULT_TAU,
                  metric="euclidean", start=None):
    """Grow a basis until every vertex is in some member's support.

    Starts from k0 farthest-point seeds (curvature maximum first), then
    repeatedly: find uncovered vertices, split them into connected
    components over mesh edges, and seed each component at its vertex
    farthest (graph distance) from the covered set, ties to the lowest
    index.  Seeds are never reselected.  Each new seed must cover at least
    its own vertex, which guarantees termination in at most n iterations.
    """
    n = mesh.n_vertices
    fps = farthest_point_sampling(mesh, min(k0, n), start=start,
                                  metric=metric, op=op)
    seed_list = list(fps)
    pending = list(fps)
    covered = np.zeros(n, dtype=bool)
    fields = []
    history = []
    adj = mesh.adjacency()
    wadj = mesh.adjacency(weighted=True)
    for _ in range(n):
        for s in pending:
            f = generator(s)
            sup = support(f, tau)
            if s not in sup:
                raise NoProgress(
                    f"generator field at seed {s} does not cover its own "
                    "vertex"
                )
            fields.append(f)
            covered[sup] = True
        history.append(float(covered.mean()))
        if covered.all():
            basis = BasisSet(fields, "coverage", seeds=seed_list,
                             params={"tau": tau, "k0": k0})
            seeds = SeedSet(seed_list, method="coverage", start=fps.start,
                            metric=metric)
            return CoverageResult(seeds, basis, history, tau)
        uncovered = np.flatnonzero(~covered)
        sub = adj[uncovered][:, uncovered]
        ncomp, labels = csgraph.connected_components(sub, directed=False)
        d_cov = csgraph.dijkstra(wadj, directed=False,
                                 indices=np.flatnonzero(covered),
                                 min_only=True)
        reps = []
        for c in range(ncomp):
            verts = uncovered[labels == c]
            reps.append(int(verts[np.argmax(d_cov[verts])]))
        pending = sorted(reps)
        seed_list.extend(pending)
    raise NoProgress("coverage loop failed to terminate")


def coverage_curve(fields, tau=DEFAULT_TAU):
    """Fraction of vertices covered by the first k supports, per k."""
    fields = list(fields)
    if not fields:
        raise ValueError("coverage curve of an empty set")
    n = len(field_values(fields[0]))
    covered = np.zeros(n, dtype=bool)
    out = []
    for f in fields:
        covered[support(f, tau)] = True
        out.append(float(covered.mean()))
    return np.array(out)


def save_seeds(seeds, path):
    """One vertex index per line."""
    atomic_write_text(path, "\n".join(str(i) for i in seeds) + "\n")


def load_seeds(path):
    with open(path) as fh:
        idx = [int(line) for line in fh if line.strip()]
    return SeedSet(idx, method="file")
