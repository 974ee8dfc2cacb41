"""Stiffness/mass assembly for triangle meshes and the operator action.

The discrete Laplace-Beltrami operator is the pair (L, B) acting as B^{-1}L:
L holds the cotangent (FEM) or mean-value weights, B the vertex masses.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.io import mmwrite

from .errors import AllDegenerate, EmptyMesh
from .fields import ScalarField, field_values
from .numerics import SparseSymMatrix, solve_spd

SCHEMES = ("linear_fem", "voronoi_cotangent", "mean_value")
MASS_MODES = ("lumped", "consistent")


@dataclass(frozen=True)
class LaplacianOperator:
    """Assembled stiffness L and mass B with their scheme tags.

    L is symmetric PSD for the FEM schemes; the mean-value scheme stores a
    row-normalised non-symmetric matrix (kind "general") which participates
    only in harmonic-type solves.  negative_weight_count reports edge
    weights with the "wrong" sign (obtuse cotangents), surfaced rather than
    corrected.
    """

    L: SparseSymMatrix
    B: SparseSymMatrix
    scheme: str
    mass_mode: str
    negative_weight_count: int = 0

    @property
    def n(self):
        return self.L.shape[0]

    @property
    def is_symmetric(self):
        return self.L.kind != "general"


def _triangle_geometry(mesh):
    """Areas and corner data of the non-degenerate triangles."""
    tris = mesh.triangles
    p = mesh.vertices[tris]
    cross = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    areas = 0.5 * np.linalg.norm(cross, axis=1)
    keep = areas >= 1e-12 * mesh.bbox_diagonal() ** 2
    if not np.any(keep):
        raise AllDegenerate("every triangle is degenerate")
    return tris[keep], p[keep], areas[keep]


def _fem_stiffness(n, tris, p, areas):
    """Cotangent stiffness: off-diagonal -(cot a + cot b)/2, diag = -rowsum."""
    rows, cols, vals = [], [], []
    for corner in range(3):
        i = tris[:, (corner + 1) % 3]
        j = tris[:, (corner + 2) % 3]
        u = p[:, (corner + 1) % 3] - p[:, corner]
        v = p[:, (corner + 2) % 3] - p[:, corner]
        # cot of the angle at `corner`, opposite to edge (i, j)
        cot = np.einsum("ij,ij->i", u, v) / (2.0 * areas)
        w = -0.5 * cot
        rows.extend([i, j])
        cols.extend([j, i])
        vals.extend([w, w])
    L = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsr()
    L = L - sp.diags(np.asarray(L.sum(axis=1)).ravel())
    return L.tocsr()


def _mass(n, tris, areas, lumped):
    if lumped:
        d = np.zeros(n)
        np.add.at(d, tris.ravel(), np.repeat(areas / 3.0, 3))
        return sp.diags(d).tocsr()
    rows, cols, vals = [tris.ravel()], [tris.ravel()], [np.repeat(areas / 6.0, 3)]
    for a, b in ((0, 1), (1, 2), (2, 0)):
        rows.extend([tris[:, a], tris[:, b]])
        cols.extend([tris[:, b], tris[:, a]])
        vals.extend([areas / 12.0, areas / 12.0])
    M = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    )
    return M.tocsr()


def _mean_value_stiffness(n, tris, p):
    """Row-normalised mean-value weights: L = I - W, W row-stochastic.

    The weight of directed edge (i, j) is tan(angle/2)/|pi - pj| summed over
    the angles at p_i in the triangles containing the edge.
    """
    rows, cols, vals = [], [], []
    for corner in range(3):
        a = tris[:, corner]
        b = tris[:, (corner + 1) % 3]
        c = tris[:, (corner + 2) % 3]
        u = p[:, (corner + 1) % 3] - p[:, corner]
        v = p[:, (corner + 2) % 3] - p[:, corner]
        lu = np.linalg.norm(u, axis=1)
        lv = np.linalg.norm(v, axis=1)
        cos = np.einsum("ij,ij->i", u, v) / (lu * lv)
        sin = np.linalg.norm(np.cross(u, v), axis=1) / (lu * lv)
        tan_half = sin / (1.0 + cos)  # tan(angle/2), stable for angle < pi
        rows.extend([a, a])
        cols.extend([b, c])
        vals.extend([tan_half / lu, tan_half / lv])
    W = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsr()
    rowsum = np.asarray(W.sum(axis=1)).ravel()
    rowsum[rowsum == 0.0] = 1.0  # isolated vertices keep an identity row
    W = sp.diags(1.0 / rowsum) @ W
    return (sp.eye(n) - W).tocsr(), W


def assemble(mesh, scheme="linear_fem", mass_mode="lumped"):
    """Assemble the (L, B) pair for a mesh under the chosen weight scheme.

    linear_fem: cotangent stiffness with consistent or lumped FEM mass.
    voronoi_cotangent: the same stiffness with the mass necessarily lumped.
    mean_value: positive row-normalised weights, non-symmetric, for
    harmonic-type solves only; mass as in lumped FEM.

    Degenerate triangles (area below 1e-12 x squared bbox diagonal)
    contribute nothing.  Boundaries are natural: sums simply run over the
    existing triangles.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if mass_mode not in MASS_MODES:
        raise ValueError(f"unknown mass mode {mass_mode!r}")
    if mesh.n_triangles == 0:
        raise EmptyMesh("mesh has no triangles")
    if scheme == "voronoi_cotangent" and mass_mode == "consistent":
        raise ValueError("voronoi_cotangent is defined by lumping; use lumped mass")

    tris, p, areas = _triangle_geometry(mesh)
    n = mesh.n_vertices

    if scheme == "mean_value":
        L, W = _mean_value_stiffness(n, tris, p)
        B = _mass(n, tris, areas, lumped=True)
        negatives = int(np.sum(W.data < 0.0))
        return LaplacianOperator(
            SparseSymMatrix(L, "general"),
            SparseSymMatrix(B, "pd"),
            scheme,
            "lumped",
            negatives,
        )

    L = _fem_stiffness(n, tris, p, areas)
    lumped = mass_mode == "lumped" or scheme == "voronoi_cotangent"
    B = _mass(n, tris, areas, lumped=lumped)
    off = L.copy()
    off.setdiag(0.0)
    negatives = int(np.sum(off.data > 0.0))  # positive off-diagonal = negative weight
    return LaplacianOperator(
        SparseSymMatrix(L, "psd"),
        SparseSymMatrix(B, "pd"),
        scheme,
        "lumped" if lumped else "consistent",
        negatives,
    )


def apply(op, f):
    """Action of the operator: B^{-1} (L f)."""
    values = field_values(f)
    if len(values) != op.n:
        raise ValueError("field length does not match operator dimension")
    lf = op.L.data @ values
    if op.mass_mode == "lumped":
        out = lf / op.B.data.diagonal()
    else:
        out = solve_spd(op.B, lf)
    return ScalarField(out, tag="laplacian")


def save_matrix_market(op, prefix):
    """Export L and B as Matrix Market files ``<prefix>.L.mtx``/``.B.mtx``."""
    paths = (f"{prefix}.L.mtx", f"{prefix}.B.mtx")
    symmetry = "symmetric" if op.is_symmetric else "general"
    mmwrite(paths[0], op.L.data.tocoo(), symmetry=symmetry)
    mmwrite(paths[1], op.B.data.tocoo(), symmetry="symmetric")
    return paths
