import math
import os

import pytest

if os.environ.get("SGT_SKIP_IF_MISSING"):
    sgt = pytest.importorskip("sgt")
else:
    import sgt

np = pytest.importorskip("numpy")


def test_exp_log_round_trip():
    x = np.array([0.3, -0.7, 1.1])
    u = sgt.exp(x)
    assert u.shape == (2, 2)
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-14)
    assert np.allclose(sgt.log(u), x, atol=1e-12)


def test_bracket_convention():
    t1, t2, t3 = np.eye(3)
    assert np.allclose(sgt.bracket(t1, t2), -t3)
    m1, m2, m3 = (sgt.generator(k) for k in (1, 2, 3))
    assert np.allclose(m1 @ m2 - m2 @ m1, -m3)


def test_bch_second_order():
    x = np.array([0.01, 0.0, 0.0])
    y = np.array([0.0, 0.02, 0.0])
    assert np.allclose(sgt.bch(x, y, 2), x + y + 0.5 * sgt.bracket(x, y), atol=1e-17)


def test_mesh_counts():
    mesh = sgt.Mesh(3, 2)
    assert (mesh.num_vertices, mesh.num_edges, mesh.num_faces, mesh.num_tets) == (27, 189, 324, 162)
    assert mesh.dump().startswith("# sgt mesh N=3 Nt=2")


def test_constant_commutator_field():
    mesh = sgt.Mesh(4, 4)
    mass = sgt.Mass(mesh)
    field = sgt.sample_case(4, mesh)
    assert field.temporal_gauge
    j = sgt.action("J", field, mesh, mass)["total"]
    assert j == pytest.approx(0.5, rel=1e-12)
    l = sgt.action("L", field, mesh, mass)["total"]
    assert abs(l - 0.5) / 0.5 == pytest.approx(6.921e-3, rel=1e-3)


def test_gauge_invariance():
    mesh = sgt.Mesh(2, 2)
    mass = sgt.Mass(mesh)
    field = sgt.random_field(mesh, 3, 0.2)
    g = sgt.random_gauge(mesh, 4, 0.2)
    moved = sgt.apply_gauge(field, g, mesh)
    before = sgt.action("L", field, mesh, mass)["total"]
    after = sgt.action("L", moved, mesh, mass)["total"]
    assert abs(after - before) <= 1e-12 * (1 + before)


def test_field_tables_and_snapshots():
    mesh = sgt.Mesh(2, 2)
    field = sgt.random_field(mesh, 5, 0.4)
    rebuilt = sgt.GaugeField(mesh, field.spatial, field.temporal)
    assert np.array_equal(rebuilt.spatial, field.spatial)
    back = sgt.GaugeField.from_snapshot(field.to_snapshot(mesh), mesh)
    assert np.array_equal(back.temporal, field.temporal)


def test_convergence_and_fit():
    run = sgt.run_convergence(4, [4, 8, 16], "L")
    errs = [r["rel_err"] for r in run["records"]]
    assert run["strictly_decreasing"]
    assert 1.8 <= run["fit"]["exponent"] <= 2.2
    assert errs[0] > errs[1] > errs[2]
    fit = sgt.fit_power_law([0.5, 0.25, 0.125], [3 * h * h for h in (0.5, 0.25, 0.125)])
    assert fit["exponent"] == pytest.approx(2.0)
    assert fit["prefactor"] == pytest.approx(3.0)


def test_errors_surface_as_sgt_error():
    with pytest.raises(sgt.SgtError):
        sgt.sample_case(9, sgt.Mesh(2, 2))
    with pytest.raises(ValueError):
        sgt.Mesh(1, 2)
    assert sgt.continuum_action(3) == pytest.approx(0.5 + 1 / (8 * (2 * math.pi) ** 4))
