"""Mesh loading, validation, distances, and round-trips."""

import numpy as np
import pytest

import lapbasis as lb
from lapbasis.errors import DisconnectedMesh, ParseError, UnsupportedFeature
from lapbasis.mesh import save_off, save_ply

from conftest import merge_meshes

OFF_SQUARE = """\
OFF
# a unit square made of two triangles

4 2 0
0.0 0.0 0.0
1.0 0.0 0.0
1.0 1.0 0.0
0.0 1.0 0.0
3 0 1 2
3 0 2 3
"""

OBJ_QUAD = """\
# quad fan plus a lone triangle
v 0 0 0
v 1 0 0
v 1 1 0
v 0 1 0
v 2 0 0
vt 0 0
vn 0 0 1
usemtl none
f 1/1/1 2/1/1 3/1/1 4/1/1
f 2 5 3
"""

PLY_EXTRA = """\
ply
format ascii 1.0
comment made by hand
element vertex 3
property float confidence
property float x
property float y
property float z
element face 1
property list uchar int vertex_indices
end_header
0.9 0.0 0.0 0.0
0.8 1.0 0.0 0.0
0.7 0.0 1.0 0.0
3 0 1 2
"""


class TestParsing:
    def test_off_with_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "square.off"
        path.write_text(OFF_SQUARE)
        mesh = lb.load_mesh(path)
        assert mesh.n_vertices == 4
        assert mesh.n_triangles == 2
        assert np.allclose(mesh.vertices[2], [1.0, 1.0, 0.0])

    def test_format_detected_from_extension(self, tmp_path):
        path = tmp_path / "square.off"
        path.write_text(OFF_SQUARE)
        mesh = lb.load_mesh(path, format="auto")
        assert mesh.n_triangles == 2

    def test_obj_one_based_and_quad_fan(self, tmp_path):
        path = tmp_path / "quad.obj"
        path.write_text(OBJ_QUAD)
        mesh = lb.load_mesh(path)
        assert any("triangulated" in w for w in mesh.warnings)
        # the quad splits into a fan of two triangles plus the lone one
        assert mesh.n_vertices == 5
        assert mesh.n_triangles == 3
        assert [0, 1, 2] in mesh.triangles.tolist()
        assert [0, 2, 3] in mesh.triangles.tolist()

    def test_obj_negative_indices(self, tmp_path):
        text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n"
        path = tmp_path / "neg.obj"
        path.write_text(text)
        mesh = lb.load_mesh(path)
        assert mesh.triangles.tolist() == [[0, 1, 2]]

    def test_ply_respects_property_order(self, tmp_path):
        path = tmp_path / "extra.ply"
        path.write_text(PLY_EXTRA)
        mesh = lb.load_mesh(path)
        # confidence comes first in the header, so x is the second column
        assert np.allclose(mesh.vertices[1], [1.0, 0.0, 0.0])
        assert mesh.triangles.tolist() == [[0, 1, 2]]

    def test_out_of_range_index_raises(self, tmp_path):
        text = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n"
        path = tmp_path / "bad.off"
        path.write_text(text)
        with pytest.raises(ParseError):
            lb.load_mesh(path)

    def test_truncated_file_raises(self, tmp_path):
        path = tmp_path / "short.off"
        path.write_text("OFF\n4 2 0\n0 0 0\n")
        with pytest.raises(ParseError):
            lb.load_mesh(path)

    def test_pentagon_face_unsupported(self, tmp_path):
        text = (
            "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv -1 0.5 0\n"
            "f 1 2 3 4 5\n"
        )
        path = tmp_path / "penta.obj"
        path.write_text(text)
        with pytest.raises(UnsupportedFeature):
            lb.load_mesh(path)

    def test_unknown_format_rejected(self, tmp_path):
        path = tmp_path / "mesh.stl"
        path.write_text("solid nothing\n")
        with pytest.raises(UnsupportedFeature):
            lb.load_mesh(path)


class TestConstruction:
    def test_repeated_vertex_in_triangle_rejected(self):
        verts = np.eye(3)
        with pytest.raises(ValueError):
            lb.TriangleMesh(verts, np.array([[0, 1, 1]]))

    def test_nonfinite_vertex_rejected(self):
        verts = np.array([[0.0, 0.0, 0.0], [np.nan, 0, 0], [0, 1, 0]])
        with pytest.raises(ValueError):
            lb.TriangleMesh(verts, np.array([[0, 1, 2]]))

    def test_arrays_are_immutable(self, sphere1):
        with pytest.raises((ValueError, RuntimeError)):
            sphere1.vertices[0, 0] = 99.0

    def test_icosphere_counts(self):
        for s in range(4):
            m = lb.icosphere(s)
            assert m.n_vertices == 2 + 10 * 4**s
            assert m.n_triangles == 2 * m.n_vertices - 4

    def test_icosphere_refinement_preserves_coarse_vertices(self):
        coarse = lb.icosphere(1)
        fine = lb.icosphere(2)
        assert np.allclose(fine.vertices[: coarse.n_vertices], coarse.vertices)

    def test_icosphere_radius(self):
        m = lb.icosphere(2, radius=10.0)
        assert np.allclose(np.linalg.norm(m.vertices, axis=1), 10.0)


class TestValidate:
    def test_closed_sphere(self, sphere2):
        rep = lb.validate(sphere2)
        assert rep.n_vertices == 162
        assert rep.n_boundary_edges == 0
        assert rep.n_components == 1
        assert rep.degenerate_triangles == []
        assert rep.nonmanifold_edges == []

    def test_square_boundary(self):
        rep = lb.validate(lb.unit_square())
        assert rep.n_boundary_edges == 4
        assert rep.n_components == 1

    def test_degenerate_triangle_reported(self):
        verts = np.array(
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [2, 0, 0]], dtype=float
        )
        tris = np.array([[0, 1, 2], [0, 1, 3]])  # second is collinear
        rep = lb.validate(lb.TriangleMesh(verts, tris))
        assert rep.degenerate_triangles == [1]

    def test_two_components(self, two_spheres):
        rep = lb.validate(two_spheres)
        assert rep.n_components == 2


class TestDistances:
    def test_source_distance_zero(self, sphere2):
        d = lb.field_values(lb.vertex_distances(sphere2, 5))
        assert d[5] == 0.0
        assert (d[np.arange(162) != 5] > 0).all()

    def test_euclidean_square(self):
        d = lb.vertex_distances(lb.unit_square(), 0, metric="euclidean")
        assert np.allclose(lb.field_values(d), [0.0, 1.0, np.sqrt(2.0), 1.0])

    def test_graph_geodesic_square(self):
        # the diagonal edge (0, 2) exists, so the geodesic equals sqrt(2)
        d = lb.vertex_distances(lb.unit_square(), 0, metric="graph_geodesic")
        assert np.allclose(lb.field_values(d), [0.0, 1.0, np.sqrt(2.0), 1.0])

    def test_geodesic_dominates_euclidean(self, torus200):
        de = lb.field_values(lb.vertex_distances(torus200, 0))
        dg = lb.field_values(
            lb.vertex_distances(torus200, 0, metric="graph_geodesic")
        )
        assert (dg >= de - 1e-12).all()

    def test_disconnected_distances_infinite(self, two_spheres):
        with pytest.warns(UserWarning, match="disconnected"):
            d = lb.vertex_distances(two_spheres, 0, metric="graph_geodesic")
        d = lb.field_values(d)
        n = two_spheres.n_vertices // 2
        assert np.isinf(d[n:]).all()
        assert np.isfinite(d[:n]).all()

    def test_bad_metric(self, sphere1):
        with pytest.raises(ValueError):
            lb.vertex_distances(sphere1, 0, metric="manhattan")

    def test_bad_source(self, sphere1):
        with pytest.raises(IndexError):
            lb.vertex_distances(sphere1, 42)


class TestTopology:
    def test_one_ring_symmetry(self, sphere1):
        rings = [sphere1.one_ring(i) for i in range(42)]
        for i, ring in enumerate(rings):
            for j in ring:
                assert i in rings[j]

    def test_adjacency_matches_edges(self, sphere1):
        A = sphere1.adjacency()
        assert (A != A.T).nnz == 0
        # every triangle edge is present
        for a, b, c in sphere1.triangles:
            assert A[a, b] != 0 and A[b, c] != 0 and A[c, a] != 0

    def test_weighted_adjacency_stores_lengths(self, sphere1):
        W = sphere1.adjacency(weighted=True)
        p = sphere1.vertices
        a, b, _ = sphere1.triangles[0]
        assert np.isclose(W[a, b], np.linalg.norm(p[a] - p[b]))

    def test_boundary_edges_square(self):
        edges = lb.unit_square().boundary_edges()
        assert len(edges) == 4

    def test_connected_components(self, two_spheres):
        ncomp, labels = two_spheres.connected_components()
        assert ncomp == 2
        assert set(labels[:42].tolist()) == {0}
        assert set(labels[42:].tolist()) == {1}


class TestRoundTrip:
    def test_off_save_load_save_identical(self, sphere1, tmp_path):
        p1 = tmp_path / "a.off"
        p2 = tmp_path / "b.off"
        save_off(sphere1, p1)
        again = lb.load_mesh(p1)
        save_off(again, p2)
        assert p1.read_bytes() == p2.read_bytes()
        assert np.allclose(again.vertices, sphere1.vertices, rtol=1e-8)
        assert (again.triangles == sphere1.triangles).all()

    def test_ply_round_trip(self, sphere1, tmp_path):
        path = tmp_path / "s.ply"
        save_ply(sphere1, path)
        again = lb.load_mesh(path)
        assert again.n_vertices == sphere1.n_vertices
        assert (again.triangles == sphere1.triangles).all()
        assert np.allclose(again.vertices, sphere1.vertices, rtol=1e-8)

    def test_ply_with_colors(self, sphere1, tmp_path):
        path = tmp_path / "c.ply"
        colors = np.zeros((42, 3), dtype=int)
        colors[:, 0] = np.arange(42) * 6
        save_ply(sphere1, path, colors=colors)
        text = path.read_text()
        assert "property uchar red" in text
        again = lb.load_mesh(path)
        assert again.n_vertices == 42
