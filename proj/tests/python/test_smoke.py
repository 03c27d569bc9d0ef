import json
import math

import numpy as np
import pytest

import stitlab


def test_p1j_golden():
    value, err = stitlab.p1j(0, d=3, j=1)
    assert abs(value - (5 + 18 * math.log(2) - 63 / 4 * math.log(3))) < 1e-9
    assert err < 1e-6


def test_means():
    assert stitlab.mean_internal_vertices(3, 1) == pytest.approx(7.0)
    assert math.isinf(stitlab.mean_internal_vertices(2, 1))


def test_palm_samples_shape_and_determinism():
    a = stitlab.palm_samples(3, 1, samples=2000, seed=5)
    b = stitlab.palm_samples(3, 1, samples=2000, seed=5, threads=2)
    assert a["birth_times"].shape == (2000, 2)
    assert np.all(np.diff(a["birth_times"], axis=1) >= 0)
    assert np.array_equal(a["internal_vertices"], b["internal_vertices"])
    assert np.array_equal(a["length"], b["length"])
    # typical segment of a planar STIT carries 2 internal vertices on average
    c = stitlab.palm_samples(2, 0, samples=50000, seed=1)
    assert abs(c["internal_vertices"].mean() - 2.0) < 0.1


def test_simulate_and_json_roundtrip():
    y = stitlab.simulate([0, 0], [10, 10], horizon=1.0, measure="axis-parallel", seed=3)
    assert y.dim == 2
    assert y.cell_count == y.face_count + 1
    area = 0.0
    for cell in y.cells():
        x, z = cell[:, 0], cell[:, 1]
        area += 0.5 * abs(np.dot(x, np.roll(z, -1)) - np.dot(z, np.roll(x, -1)))
    assert area == pytest.approx(100.0)
    doc = y.to_json()
    assert json.loads(doc)["format"] == "stit-tess/1"
    assert stitlab.from_json(doc).to_json() == doc
    assert y.to_svg().startswith("<svg")


def test_restrict_and_sections():
    y = stitlab.simulate([0, 0], [20, 20], horizon=1.0, seed=7)
    sub = y.restrict([5, 5], [15, 15])
    assert sub.cell_count <= y.cell_count
    pts = y.line_section([0.5, 10.0], [19.5, 10.0])
    assert pts.shape[1] == 2
    assert np.all(np.diff(pts[:, 0]) > 0)


def test_errors_are_translated():
    with pytest.raises(stitlab.StitlabError):
        stitlab.simulate([0, 0], [0, 10], horizon=1.0)
    with pytest.raises(stitlab.StitlabError):
        stitlab.simulate([0, 0], [1, 1], horizon=1.0, measure="no-such-measure")


def test_mecke_runs():
    r = stitlab.mecke("simple", replications=40, seed=2, threads=1)
    assert set(r) == {"lhs", "rhs", "overlap"}
    assert r["lhs"][0] >= 0.0
