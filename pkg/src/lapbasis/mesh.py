"""Triangle meshes: ingestion, validation, adjacency, and distances.

Meshes are immutable after construction; every derived quantity is computed
from the vertex and triangle arrays, which are write-protected.
"""

import os

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import ParseError, UnsupportedFeature
from .fields import ScalarField

# triangles with area below this fraction of the squared bounding-box
# diagonal are flagged degenerate and skipped during operator assembly
DEGENERATE_AREA_FACTOR = 1e-12


class TriangleMesh:
    """Vertex positions plus triangle connectivity and derived adjacency.

    Parameters
    ----------
    vertices : (n, 3) array_like
        Vertex positions in model units.
    triangles : (m, 3) array_like
        Vertex-index triples, zero-based.
    warnings : sequence of str, optional
        Messages recorded while loading (e.g. fan-triangulated quads).
    """

    def __init__(self, vertices, triangles, warnings=()):
        vertices = np.array(vertices, dtype=float)
        triangles = np.array(triangles, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            raise ValueError("vertices must be an (n, 3) array")
        if triangles.ndim != 2 or triangles.shape[1] != 3:
            raise ValueError("triangles must be an (m, 3) array")
        if len(vertices) < 3:
            raise ValueError("mesh needs at least 3 vertices")
        if len(triangles) < 1:
            raise ValueError("mesh needs at least one triangle")
        if not np.isfinite(vertices).all():
            raise ValueError("vertex coordinates must be finite")
        if triangles.min() < 0 or triangles.max() >= len(vertices):
            raise ValueError("triangle index out of range")
        if (
            np.any(triangles[:, 0] == triangles[:, 1])
            or np.any(triangles[:, 1] == triangles[:, 2])
            or np.any(triangles[:, 2] == triangles[:, 0])
        ):
            raise ValueError("triangle repeats a vertex")
        vertices.setflags(write=False)
        triangles.setflags(write=False)
        self.vertices = vertices
        self.triangles = triangles
        self.warnings = tuple(warnings)
        self._build_adjacency()

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_triangles(self):
        return len(self.triangles)

    def _build_adjacency(self):
        tris = self.triangles
        half = tris[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 2)
        undirected = np.sort(half, axis=1)
        edges, counts = np.unique(undirected, axis=0, return_counts=True)
        edges.setflags(write=False)
        self.edges = edges
        self._edge_counts = counts

        # 1-ring neighbours, sorted per vertex
        both = np.vstack([edges, edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        splits = np.searchsorted(both[:, 0], np.arange(1, self.n_vertices))
        self._one_rings = [r[:, 1] for r in np.split(both, splits)]

        # incident triangles per vertex
        tri_ids = np.repeat(np.arange(len(tris)), 3)
        flat = tris.ravel()
        order = np.argsort(flat, kind="stable")
        flat, tri_ids = flat[order], tri_ids[order]
        splits = np.searchsorted(flat, np.arange(1, self.n_vertices))
        self._vertex_tris = np.split(tri_ids, splits)

    def one_ring(self, i):
        """Sorted vertex indices adjacent to vertex i."""
        return self._one_rings[i]

    def incident_triangles(self, i):
        """Indices of triangles containing vertex i."""
        return self._vertex_tris[i]

    def boundary_edges(self):
        """Edges with exactly one incident triangle, as a (b, 2) array."""
        return self.edges[self._edge_counts == 1]

    def nonmanifold_edges(self):
        """Edges with more than two incident triangles."""
        return self.edges[self._edge_counts > 2]

    def triangle_areas(self):
        """Area of every triangle."""
        p = self.vertices[self.triangles]
        cross = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
        return 0.5 * np.linalg.norm(cross, axis=1)

    def bbox_diagonal(self):
        """Length of the axis-aligned bounding-box diagonal."""
        return float(
            np.linalg.norm(self.vertices.max(axis=0) - self.vertices.min(axis=0))
        )

    def degenerate_triangles(self):
        """Indices of triangles with area below the degeneracy threshold."""
        thresh = DEGENERATE_AREA_FACTOR * self.bbox_diagonal() ** 2
        return np.flatnonzero(self.triangle_areas() < thresh)

    def adjacency(self, weighted=False):
        """Sparse symmetric vertex adjacency.

        With ``weighted=True`` entries are edge lengths, otherwise 1.
        """
        i, j = self.edges[:, 0], self.edges[:, 1]
        if weighted:
            w = np.linalg.norm(self.vertices[i] - self.vertices[j], axis=1)
        else:
            w = np.ones(len(i))
        a = sp.coo_matrix(
            (np.r_[w, w], (np.r_[i, j], np.r_[j, i])),
            shape=(self.n_vertices, self.n_vertices),
        )
        return a.tocsr()

    def connected_components(self):
        """Number of components and the per-vertex component labels."""
        return csgraph.connected_components(self.adjacency(), directed=False)


class MeshReport:
    """Validation summary produced by :func:`validate`."""

    def __init__(
        self,
        n_vertices,
        n_triangles,
        n_boundary_edges,
        n_components,
        degenerate_triangles,
        nonmanifold_edges,
    ):
        self.n_vertices = n_vertices
        self.n_triangles = n_triangles
        self.n_boundary_edges = n_boundary_edges
        self.n_components = n_components
        self.degenerate_triangles = degenerate_triangles
        self.nonmanifold_edges = nonmanifold_edges

    def as_dict(self):
        return {
            "n_vertices": int(self.n_vertices),
            "n_triangles": int(self.n_triangles),
            "n_boundary_edges": int(self.n_boundary_edges),
            "n_components": int(self.n_components),
            "degenerate_triangles": [int(t) for t in self.degenerate_triangles],
            "nonmanifold_edges": [[int(a), int(b)] for a, b in self.nonmanifold_edges],
        }


def validate(mesh):
    """Report counts, degenerate triangles, and non-manifold edges.

    Never mutates or rejects the mesh; problems are reported, not thrown.
    """
    ncomp, _ = mesh.connected_components()
    return MeshReport(
        n_vertices=mesh.n_vertices,
        n_triangles=mesh.n_triangles,
        n_boundary_edges=len(mesh.boundary_edges()),
        n_components=ncomp,
        degenerate_triangles=[int(i) for i in mesh.degenerate_triangles()],
        nonmanifold_edges=[tuple(map(int, e)) for e in mesh.nonmanifold_edges()],
    )


def vertex_distances(mesh, source, metric="euclidean"):
    """Distance from one source vertex to every vertex.

    metric "euclidean" is the straight-line 3D distance; "graph_geodesic"
    is the single-source shortest path over edges weighted by length.  On a
    disconnected mesh geodesic distances to unreachable vertices are +inf
    (kept in the output, reported as a warning).
    """
    if not 0 <= source < mesh.n_vertices:
        raise IndexError("source vertex out of range")
    if metric == "euclidean":
        d = np.linalg.norm(mesh.vertices - mesh.vertices[source], axis=1)
    elif metric == "graph_geodesic":
        d = csgraph.dijkstra(
            mesh.adjacency(weighted=True), directed=False, indices=source
        )
        if np.any(np.isinf(d)):
            import warnings

            warnings.warn(
                "mesh is disconnected; some geodesic distances are infinite",
                stacklevel=2,
            )
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return ScalarField(d, tag=f"distance:{metric}:{source}")


# ---------------------------------------------------------------------------
# file ingestion


def load_mesh(path, format="auto"):
    """Load an OFF, OBJ, or ascii PLY file into a TriangleMesh.

    Quads are fan-triangulated with a recorded warning; polygons with more
    than four sides are rejected.
    """
    if format == "auto":
        ext = os.path.splitext(path)[1].lower().lstrip(".")
        format = {"off": "OFF", "obj": "OBJ", "ply": "PLY"}.get(ext)
        if format is None:
            raise UnsupportedFeature(f"cannot infer mesh format from {path!r}")
    format = format.upper()
    with open(path, "r") as fh:
        text = fh.read()
    parsers = {"OFF": _parse_off, "OBJ": _parse_obj, "PLY": _parse_ply}
    if format not in parsers:
        raise UnsupportedFeature(f"unknown mesh format {format!r}")
    try:
        return parsers[format](text)
    except ValueError as exc:
        # constructor-level defects (bad indices, repeated vertices) are
        # file defects when they come from a parse
        raise ParseError(f"{path}: {exc}") from exc


def _triangulate(face, warnings):
    """Fan-triangulate a polygon; only triangles and quads are accepted."""
    if len(face) == 3:
        return [face]
    if len(face) == 4:
        warnings.append("quad face fan-triangulated")
        return [[face[0], face[1], face[2]], [face[0], face[2], face[3]]]
    raise UnsupportedFeature(f"{len(face)}-sided face not supported")


def _parse_off(text):
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens:
        raise ParseError("empty OFF file")
    pos = 0
    if tokens[0].upper() == "OFF":
        pos = 1
    try:
        nv, nf = int(tokens[pos]), int(tokens[pos + 1])
        pos += 3  # vertex, face, and (ignored) edge counts
        verts = np.array(tokens[pos : pos + 3 * nv], dtype=float).reshape(nv, 3)
        pos += 3 * nv
        warnings, tris = [], []
        for _ in range(nf):
            k = int(tokens[pos])
            face = [int(t) for t in tokens[pos + 1 : pos + 1 + k]]
            if len(face) != k:
                raise ParseError("truncated face record in OFF file")
            pos += 1 + k
            tris.extend(_triangulate(face, warnings))
    except (ValueError, IndexError) as exc:
        raise ParseError(f"malformed OFF file: {exc}") from exc
    return TriangleMesh(verts, tris, warnings)


def _parse_obj(text):
    verts, tris, warnings = [], [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) < 4:
                raise ParseError(f"line {lineno}: vertex needs 3 coordinates")
            try:
                verts.append([float(x) for x in parts[1:4]])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
        elif parts[0] == "f":
            face = []
            for ref in parts[1:]:
                try:
                    idx = int(ref.split("/")[0])
                except ValueError as exc:
                    raise ParseError(f"line {lineno}: bad face index {ref!r}") from exc
                # OBJ indices are 1-based; negative values count from the end
                face.append(idx - 1 if idx > 0 else len(verts) + idx)
            tris.extend(_triangulate(face, warnings))
        # all other record types (vn, vt, usemtl, ...) are ignored
    if not verts or not tris:
        raise ParseError("OBJ file contains no usable v/f records")
    return TriangleMesh(verts, tris, warnings)


def _parse_ply(text):
    lines = iter(text.splitlines())
    try:
        if next(lines).strip() != "ply":
            raise ParseError("missing ply magic")
    except StopIteration:
        raise ParseError("empty PLY file") from None
    elements = []  # (name, count, [property names])
    for raw in lines:
        parts = raw.strip().split()
        if not parts or parts[0] == "comment":
            continue
        if parts[0] == "format":
            if parts[1] != "ascii":
                raise UnsupportedFeature("only ascii PLY is supported")
        elif parts[0] == "element":
            elements.append((parts[1], int(parts[2]), []))
        elif parts[0] == "property":
            if not elements:
                raise ParseError("property before any element")
            elements[-1][2].append(parts[-1])
        elif parts[0] == "end_header":
            break
    else:
        raise ParseError("PLY header not terminated")

    verts, tris, warnings = None, [], []
    for name, count, props in elements:
        rows = []
        for _ in range(count):
            try:
                rows.append(next(lines).split())
            except StopIteration:
                raise ParseError("PLY data shorter than declared counts") from None
        if name == "vertex":
            try:
                ix, iy, iz = props.index("x"), props.index("y"), props.index("z")
            except ValueError:
                raise ParseError("PLY vertex element lacks x/y/z") from None
            try:
                verts = [[float(r[ix]), float(r[iy]), float(r[iz])] for r in rows]
            except (ValueError, IndexError) as exc:
                raise ParseError(f"bad PLY vertex record: {exc}") from exc
        elif name == "face":
            for r in rows:
                try:
                    k = int(r[0])
                    face = [int(t) for t in r[1 : 1 + k]]
                except (ValueError, IndexError) as exc:
                    raise ParseError(f"bad PLY face record: {exc}") from exc
                if len(face) != k:
                    raise ParseError("truncated PLY face record")
                tris.extend(_triangulate(face, warnings))
    if verts is None or not tris:
        raise ParseError("PLY file lacks vertex or face elements")
    return TriangleMesh(verts, tris, warnings)


# ---------------------------------------------------------------------------
# writers


def _fmt(x):
    """Decimal text with 9 significant digits, stable under reload."""
    return format(x, ".9g")


def save_off(mesh, path):
    """Write an OFF file; coordinates keep 9 significant digits."""
    with open(path, "w") as fh:
        fh.write("OFF\n")
        fh.write(f"{mesh.n_vertices} {mesh.n_triangles} 0\n")
        for v in mesh.vertices:
            fh.write(f"{_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}\n")
        for t in mesh.triangles:
            fh.write(f"3 {t[0]} {t[1]} {t[2]}\n")


def save_ply(mesh, path, colors=None):
    """Write an ascii PLY file, optionally with per-vertex uchar RGB.

    colors, when given, is an (n, 3) integer array in 0..255.
    """
    with open(path, "w") as fh:
        fh.write("ply\nformat ascii 1.0\n")
        fh.write(f"element vertex {mesh.n_vertices}\n")
        fh.write("property float x\nproperty float y\nproperty float z\n")
        if colors is not None:
            colors = np.asarray(colors, dtype=int)
            fh.write(
                "property uchar red\nproperty uchar green\nproperty uchar blue\n"
            )
        fh.write(f"element face {mesh.n_triangles}\n")
        fh.write("property list uchar int vertex_indices\nend_header\n")
        for i, v in enumerate(mesh.vertices):
            line = f"{_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}"
            if colors is not None:
                line += f" {colors[i, 0]} {colors[i, 1]} {colors[i, 2]}"
            fh.write(line + "\n")
        for t in mesh.triangles:
            fh.write(f"3 {t[0]} {t[1]} {t[2]}\n")
