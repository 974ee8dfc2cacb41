"""Procedural meshes used by the test suite, demos, and benchmarks."""

import numpy as np

from .mesh import TriangleMesh


def icosphere(subdivisions=2, radius=1.0):
    """Subdivided icosahedron projected onto a sphere.

    Vertex count is 2 + 10 * 4**subdivisions (12, 42, 162, 642, 2562, ...).
    Subdivision preserves the indices of coarser-level vertices.
    """
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    verts = np.array(
        [
            [-1, phi, 0], [1, phi, 0], [-1, -phi, 0], [1, -phi, 0],
            [0, -1, phi], [0, 1, phi], [0, -1, -phi], [0, 1, -phi],
            [phi, 0, -1], [phi, 0, 1], [-phi, 0, -1], [-phi, 0, 1],
        ],
        dtype=float,
    )
    tris = np.array(
        [
            [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
            [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
            [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
            [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
        ]
    )
    verts = [v / np.linalg.norm(v) for v in verts]
    for _ in range(subdivisions):
        cache = {}
        new_tris = []

        def midpoint(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                m = verts[a] + verts[b]
                verts.append(m / np.linalg.norm(m))
                cache[key] = len(verts) - 1
            return cache[key]

        for a, b, c in tris:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_tris.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]])
        tris = np.array(new_tris)
    return TriangleMesh(radius * np.array(verts), tris)


def bumpy_sphere(subdivisions=3, amplitude=0.08, seed=0):
    """Icosphere with a smooth deterministic radial perturbation.

    Breaks the exact icosahedral symmetry so eigenvalues are simple; useful
    where degenerate clusters would make a test ambiguous.
    """
    base = icosphere(subdivisions)
    x, y, z = base.vertices.T
    rng = np.random.default_rng(seed)
    a, b, c = rng.uniform(2.0, 5.0, 3)
    r = 1.0 + amplitude * (np.sin(a * x) * np.cos(b * y) + 0.5 * np.sin(c * z))
    return TriangleMesh(base.vertices * r[:, None], base.triangles)


def torus(n_major=32, n_minor=16, major_radius=1.0, minor_radius=0.35):
    """Closed torus with a regular quad grid split into triangles."""
    iu, iv = np.meshgrid(np.arange(n_major), np.arange(n_minor), indexing="ij")
    u = 2 * np.pi * iu / n_major
    v = 2 * np.pi * iv / n_minor
    x = (major_radius + minor_radius * np.cos(v)) * np.cos(u)
    y = (major_radius + minor_radius * np.cos(v)) * np.sin(u)
    z = minor_radius * np.sin(v)
    verts = np.column_stack([x.ravel(), y.ravel(), z.ravel()])

    def vid(i, j):
        return (i % n_major) * n_minor + (j % n_minor)

    tris = []
    for i in range(n_major):
        for j in range(n_minor):
            tris.append([vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)])
            tris.append([vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)])
    return TriangleMesh(verts, tris)


def grid(nx=10, ny=10, width=1.0, height=1.0):
    """Planar rectangle triangulated on a regular grid (open boundary)."""
    xs = np.linspace(0.0, width, nx)
    ys = np.linspace(0.0, height, ny)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    verts = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(nx * ny)])

    def vid(i, j):
        return i * ny + j

    tris = []
    for i in range(nx - 1):
        for j in range(ny - 1):
            tris.append([vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)])
            tris.append([vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)])
    return TriangleMesh(verts, tris)


def unit_square():
    """Four vertices, two triangles, split along the diagonal."""
    verts = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]
    tris = [[0, 1, 2], [0, 2, 3]]
    return TriangleMesh(verts, tris)
