from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from extform import instances, models
from extform.core import VarSpace, VPoly
from extform.polyhedron import enumerate_vertices
from extform.textio import TextFormatError, format_file, format_model, parse_model
from strategies import boxed_hpoly, rationals

P_TEXT = """\
# the single-point polytope
hpoly P
vars x:2
1 -1 >= 6
-1 0 <= 0
1 0 <= 6
0 -1 <= 0
0 1 <= 5
end
"""


def test_parse_hpoly_and_enumerate():
    mf = parse_model(P_TEXT)
    assert mf.name == "P" and mf.kind == "hpoly"
    assert mf.model.nrows == 5
    assert enumerate_vertices(mf.model).vertices == ((6, 0),)


def test_exact_rational_row():
    mf = parse_model("hpoly R\nvars a:3\n1/3 -2 0 <= 7/2\nend\n")
    assert mf.model.a[0] == (F(1, 3), F(-2), F(0))
    assert mf.model.b[0] == F(7, 2)


def test_empty_vpoly_rejected():
    with pytest.raises(TextFormatError):
        parse_model("vpoly V\nvars x:2\nend\n")


@pytest.mark.parametrize("text, line, col", [
    ("hpoly P\nvars x:2\n1 2 3 <= 4\nend\n", 3, 1),
    ("hpoly P\nvars x:2\n1 z <= 4\nend\n", 3, 3),
    ("hpoly P\nvars x:2 x:1\nend\n", 2, 10),
    ("hpoly P\nvars x:2\n1 2 <= 4\n", 3, 1),
    ("poly P\nend\n", 1, 1),
])
def test_syntax_errors_have_positions(text, line, col):
    with pytest.raises(TextFormatError) as info:
        parse_model(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_map_and_lp_and_augspec_round_trip():
    for model in (instances.collapse_map(), instances.pair_spec(),
                  models.gen_mst_martin_reduced(3)[1]):
        text = format_model(model, "m")
        again = parse_model(text)
        assert format_file(again) == text


def test_generated_models_round_trip_bit_exact():
    for model in (models.gen_standard_tsp(4), models.gen_alternate_tsp(4),
                  models.gen_mst_edmonds(3)[0], models.gen_mst_martin(3)):
        text = format_model(model, "g")
        assert format_file(parse_model(text)) == text


@given(boxed_hpoly())
def test_hpoly_round_trip(p):
    assert parse_model(format_model(p, "h")).model == p


@given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=5))
def test_vpoly_round_trip(points):
    v = VPoly(VarSpace.of(("y", 2)), tuple(points))
    assert parse_model(format_model(v, "v")).model == v


def test_columns_line_restores_indices():
    p = models.gen_mst_martin(3)
    again = parse_model(format_model(p, "q")).model
    assert again == p and again.space.variables[3] == ("z", (1, 1, 2))


def test_columns_line_validated():
    with pytest.raises(TextFormatError):
        parse_model("hpoly P\nvars x:2\ncolumns x[1] y[2]\n1 1 <= 1\nend\n")
