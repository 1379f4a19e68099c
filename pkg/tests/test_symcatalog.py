import numpy as np
import pytest

from adoframes import (build_representation, catalog_lookup, field_bracket, sample_descriptors,
                       symbolic_frame, verify_a410_closed_form, verify_catalog_entry)
from adoframes import symbolic as sym
from adoframes.errors import UnknownAlgebraError
from adoframes.frames_tables import A410_MATRIX, FRAME_TABLES
from adoframes.symcatalog import (A410_INTERTWINER, SUITES, _combination,
                                  compare_with_pipeline, flip_sign)

COORDS = ("x", "y", "z")
BOX = {"x": (-1.0, 1.0), "y": (-1.0, 1.0), "z": (-1.0, 1.0)}


def fields_equal(X, Y, box=BOX):
    return all(sym.expr_equal(a, b, box)[0] for a, b in zip(X, Y))


def field(*texts):
    return tuple(sym.parse(t) for t in texts)


def test_abelian_coordinate_fields_commute():
    assert fields_equal(field_bracket(field("1", "0"), field("0", "1"), COORDS[:2]),
                        field("0", "0"))


def test_a2_bracket():
    X, Y = field("1", "0"), field("0", "(exp x)")
    assert fields_equal(field_bracket(X, Y, COORDS[:2]), Y)


def test_bianchi_ix_killing_fields_close():
    f = symbolic_frame("Bianchi_IX")
    C = f.algebra.constants.table
    lhs = field_bracket(f.xi[0], f.xi[1], f.coordinates)
    assert fields_equal(lhs, _combination(C, 0, 1, f.xi), f.box or BOX)


def test_table_values_at_sample_points():
    v = symbolic_frame("Bianchi_V")
    assert np.allclose(v.evaluate("xi", [1.0, 2.0, 3.0])[2], [1, 2, 1])
    z0 = 0.5
    assert np.allclose(v.evaluate("sigma", [0.0, 0.0, z0]),
                       np.diag([np.exp(-z0), np.exp(-z0), 1.0]))
    y0 = 0.7
    assert np.allclose(symbolic_frame("Bianchi_II").evaluate("eta", [0.0, y0, 0.0])[2],
                       [-y0, 0, 1])
    s = symbolic_frame("A3,1+A1").evaluate("sigma", [0.0, y0, 0.0, 0.0])
    assert np.allclose(s[0], [1, 0, y0, 0])


def test_a410_passes_all_suites():
    report = verify_catalog_entry("A4,10")
    assert report.passed
    assert [s.name for s in report.suites] == list(SUITES)


def test_bianchi_vi_at_minus_one():
    assert verify_catalog_entry("Bianchi_VI_h", {"h": -1}).passed


def test_every_table_passes():
    descs = sample_descriptors()
    assert {d.name for d in descs} == set(FRAME_TABLES)
    for d in descs:
        report = verify_catalog_entry(d.name, d.parameters)
        assert report.passed, (d.label(), [s.line() for s in report.suites])


def test_flipped_component_fails_commutation_with_witness():
    frame = flip_sign(symbolic_frame("A4,10"), "eta", 1, component=0)
    report = verify_catalog_entry("A4,10", frame=frame)
    commute = report.suite("xi-eta commute")
    assert not commute.passed
    assert set(commute.witness["point"]) == {"x", "y", "z", "w"}
    assert commute.witness["lhs"] != pytest.approx(commute.witness["rhs"])


def test_flipped_field_fails_eta_brackets_and_duality():
    # negating a whole field keeps [xi, eta] = 0 but breaks the other suites
    frame = flip_sign(symbolic_frame("A4,10"), "eta", 1)
    report = verify_catalog_entry("A4,10", frame=frame)
    assert report.suite("xi-eta commute").passed
    assert not report.suite("eta brackets").passed
    assert not report.suite("duality").passed
    assert report.suite("duality").witness is not None


def test_flipped_form_fails_structure_equation():
    frame = flip_sign(symbolic_frame("Bianchi_II"), "sigma", 0)
    report = verify_catalog_entry("Bianchi_II", frame=frame)
    assert not report.suite("structure equation").passed


def test_unknown_entry():
    with pytest.raises(UnknownAlgebraError):
        verify_catalog_entry("A5,1")


def test_corrections_are_listed():
    assert symbolic_frame("A4,7").corrections
    assert not symbolic_frame("A4,10").corrections


@pytest.fixture(scope="module")
def closed_form():
    return verify_a410_closed_form(build_representation(catalog_lookup("A4,10")))


def test_closed_form_after_change_of_basis(closed_form):
    assert closed_form.samples == 10
    assert closed_form.intertwined_deviation < 1e-9
    assert closed_form.passed


def test_closed_form_raw_comparison_differs(closed_form):
    # exp(theta . Omega) and the stored matrix differ by the fixed change of
    # basis A410_INTERTWINER, not by rounding
    assert closed_form.raw_deviation > 1e-3
    assert not closed_form.raw_passed
    assert abs(np.linalg.det(A410_INTERTWINER)) == 1


def test_closed_form_points_avoid_singular_theta(closed_form):
    a4 = np.abs(np.asarray(closed_form.points)[:, 3])
    assert np.all((a4 > 0.1) & (a4 < 2))


def test_stored_matrix_first_row_corner():
    e = sym.parse(A410_MATRIX[0][5])
    env = {"a1": 0.3, "a2": -0.7, "a3": 1.1, "a4": 0.9}
    assert sym.evaluate(e, env) == pytest.approx(-0.7 * 1.1)


@pytest.mark.parametrize("name", ["Bianchi_V", "Bianchi_II", "A2", "A3,1+A1", "A4,10"])
def test_pipeline_agrees_with_tables_on_complement(name):
    dev = compare_with_pipeline(name, algebra=catalog_lookup(name))
    assert dev is not None and dev < 1e-7
