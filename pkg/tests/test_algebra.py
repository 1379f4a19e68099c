from fractions import Fraction
import json

import pytest

from adoframes import (algebra_from_json, algebra_to_json, catalog_keys, catalog_lookup,
                       center, derived_series, is_nilpotent, is_solvable, jacobi_check,
                       lower_central_series, sample_descriptors, split_direct_sum)
from adoframes.algebra import StructureConstants
from adoframes.errors import InputError, ParameterRangeError, UnknownAlgebraError

F = Fraction


def _nonzero(desc):
    return {(m + 1, k + 1, l + 1): v for m, k, l, v in desc.constants.nonzero()}


def test_jacobi_bianchi_ix_passes():
    c = StructureConstants(3, [(0, 1, 2, 1), (1, 0, 2, -1), (2, 0, 1, 1)])
    assert jacobi_check(c)


def test_jacobi_abelian_passes():
    assert jacobi_check(StructureConstants(3))


def test_jacobi_failure_points_along_x3():
    c = StructureConstants(3, [(2, 0, 1, 1), (0, 0, 2, 1)])
    report = jacobi_check(c)
    assert not report
    assert report.kind == "jacobi"
    assert report.violation[0] == 2
    assert report.residual != 0


def test_jacobi_detects_broken_antisymmetry():
    table = StructureConstants(2, [(1, 0, 1, 1)]).table.copy()
    table[1, 1, 0] = F(2)
    report = jacobi_check(table)
    assert not report and report.kind == "antisymmetry"


def test_jacobi_rejects_bad_shape():
    with pytest.raises(InputError):
        jacobi_check([[[0, 0], [0, 0]]])


def test_center_examples():
    weyl = catalog_lookup("A3,1")
    assert [list(v) for v in center(weyl.constants)] == [[1, 0, 0]]
    assert center(catalog_lookup("Bianchi_IX").constants) == []
    assert len(center(StructureConstants(2))) == 2


def test_derived_series_examples():
    series = derived_series(catalog_lookup("A2").constants)
    assert [len(s) for s in series] == [2, 1, 0]
    assert list(series[1][0]) == [0, 1]
    assert [len(s) for s in derived_series(catalog_lookup("Bianchi_IX").constants)] == [3, 3]
    assert [len(s) for s in derived_series(StructureConstants(3))] == [3, 0]


def test_solvable_and_nilpotent_flags():
    assert is_solvable(catalog_lookup("A4,10").constants)
    assert not is_solvable(catalog_lookup("Bianchi_VIII").constants)
    assert is_nilpotent(catalog_lookup("A4,1").constants)
    assert not is_nilpotent(catalog_lookup("A2").constants)
    assert [len(s) for s in lower_central_series(catalog_lookup("A4,1").constants)] == [4, 2, 1, 0]


def test_split_direct_sum_examples():
    assert split_direct_sum(catalog_lookup("A3,8+A1").constants) == [[0, 1, 2], [3]]
    assert split_direct_sum(catalog_lookup("A4,10").constants) == [[0, 1, 2, 3]]
    assert split_direct_sum(catalog_lookup("4A1").constants) == [[0], [1], [2], [3]]


def test_lookup_bianchi_vi_at_minus_one():
    d = catalog_lookup("Bianchi_VI_h", {"h": -1})
    assert _nonzero(d) == {(1, 1, 3): 1, (2, 2, 3): -1}


def test_lookup_a45_at_one_one():
    d = catalog_lookup("A4,5", {"alpha": 1, "beta": 1})
    assert _nonzero(d) == {(1, 1, 4): 1, (2, 2, 4): 1, (3, 3, 4): 1}


def test_lookup_parameter_out_of_range():
    with pytest.raises(ParameterRangeError):
        catalog_lookup("A3,5", {"alpha": 2})


def test_lookup_unknown_name():
    with pytest.raises(UnknownAlgebraError):
        catalog_lookup("A9,9")


def test_lookup_missing_parameter():
    with pytest.raises(InputError):
        catalog_lookup("Bianchi_VII_h")


def test_lookup_aliases_agree():
    a = catalog_lookup("A3,8⊕A1")
    b = catalog_lookup("A3,8+A1")
    assert _nonzero(a) == _nonzero(b)
    e11 = catalog_lookup("E(1,1)")
    assert e11.parameters == {"h": F(-1)}


def test_catalog_sizes():
    assert len(catalog_keys(2)) == 2
    assert len(catalog_keys(3)) == 9
    assert len(catalog_keys(4)) == 24


def test_every_catalog_sample_satisfies_jacobi():
    for d in sample_descriptors():
        assert jacobi_check(d.constants), d.label()


def test_json_round_trip():
    d = catalog_lookup("A4,11", {"alpha": "1/4"})
    back = algebra_from_json(algebra_to_json(d))
    assert _nonzero(back) == _nonzero(d)
    assert json.loads(algebra_to_json(d))["params"] == {"alpha": "1/4"}
