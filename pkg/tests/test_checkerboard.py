import json

import pytest

from eqslice.checkerboard import (
    IndexOutOfRange,
    MalformedPresentation,
    SelfLoop,
    WrongEdgeCount,
    full_incidence,
    goeritz,
    load_presentation,
    parse_presentation,
    reduced_incidence,
    validate,
)
from eqslice.cli import data_path
from eqslice.exact_linalg import determinant, is_positive_definite
from reference_data import APLUS_12A1105, JMINUS_12A1105, JPLUS_12A1105


@pytest.fixture
def k12a1105():
    return load_presentation(data_path("12a1105.json"))


@pytest.fixture
def fig8():
    return load_presentation(data_path("figure8.json"))


def raw_12a1105():
    return json.loads(data_path("12a1105.json").read_text())


TOY = {"name": "toy", "n": 1, "edges_plus": [[1, 2], [1, 2]], "edges_minus": [[1, 2], [2, 1]]}


def test_parse_bundled(k12a1105):
    assert k12a1105.n == 6
    assert len(k12a1105.edges_plus) == len(k12a1105.edges_minus) == 12


def test_wrong_edge_count():
    d = raw_12a1105()
    d["edges_minus"] = d["edges_minus"][:11]
    with pytest.raises(WrongEdgeCount):
        parse_presentation(json.dumps(d))


def test_self_loop():
    d = raw_12a1105()
    d["edges_plus"][4] = [3, 3]
    with pytest.raises(SelfLoop):
        parse_presentation(json.dumps(d))


def test_index_out_of_range():
    d = raw_12a1105()
    d["edges_plus"][0] = [1, 8]
    with pytest.raises(IndexOutOfRange):
        parse_presentation(json.dumps(d))


@pytest.mark.parametrize("text", ["not json", "[]", '{"n": 0}', '{"n": 1, "edges_plus": 3}'])
def test_malformed(text):
    with pytest.raises(MalformedPresentation):
        parse_presentation(text)


def test_reduced_incidence_reproduces_reference(k12a1105):
    assert reduced_incidence(k12a1105, "plus") == JPLUS_12A1105
    assert reduced_incidence(k12a1105, "minus") == JMINUS_12A1105


def test_toy_presentation():
    p = parse_presentation(json.dumps(TOY))
    assert reduced_incidence(p, "plus") == ((1, 1),)
    assert reduced_incidence(p, "minus") == ((1, -1),)
    assert goeritz(p).matrix == ((2,),)


def test_goeritz(k12a1105):
    assert goeritz(k12a1105).matrix == APLUS_12A1105
    minus = goeritz(k12a1105, "minus")
    assert minus.diagonal == (3, 3, 4, 4, 3, 2)
    assert is_positive_definite(minus.matrix)


def test_figure_eight_goeritz(fig8):
    q = goeritz(fig8).matrix
    assert q == ((2, -1), (-1, 3))
    assert determinant(q) == 5


@pytest.mark.parametrize("name", ["12a1105.json", "figure8.json"])
def test_bundled_presentations_validate(name):
    p = load_presentation(data_path(name))
    report = validate(p)
    assert report.ok, report.failures()
    # column sums of full incidence matrices vanish
    for side in ("plus", "minus"):
        j = full_incidence(p, side)
        assert all(sum(col) == 0 for col in zip(*j))
    # Euler count for dual plane graphs
    assert (p.n + 1) + (p.n + 1) - 2 * p.n == 2


def test_orthogonality_row_one(k12a1105):
    jp = reduced_incidence(k12a1105, "plus")
    jm = reduced_incidence(k12a1105, "minus")
    assert sum(a * b for a, b in zip(jp[0], jm[0])) == 0


def test_reversed_minus_edge_breaks_orthogonality():
    d = raw_12a1105()
    d["edges_minus"][0] = d["edges_minus"][0][::-1]
    report = validate(parse_presentation(json.dumps(d)))
    failed = {c.name for c in report.failures()}
    assert "incidence_orthogonal" in failed
    assert report.failures()[0].witness is not None


def test_disconnected_plus_graph():
    # vertices 1,2 and 3,4 form separate components of the plus graph
    p = parse_presentation(json.dumps({
        "name": "split", "n": 3,
        "edges_plus": [[1, 2], [1, 2], [3, 4], [3, 4], [1, 2], [3, 4]],
        "edges_minus": [[1, 2], [2, 3], [3, 4], [4, 1], [1, 3], [2, 4]],
    }))
    report = validate(p)
    check = next(c for c in report.checks if c.name == "plus_connected")
    assert not check.passed and check.witness == {"unreached_vertices": [3, 4]}
    assert not report.ok


def test_rank_of_reduced_incidence(k12a1105):
    # a spanning tree gives a unimodular n x n minor, so J* is onto Z^n
    from eqslice.exact_linalg import smith_normal_form

    _, d, _ = smith_normal_form(reduced_incidence(k12a1105, "plus"))
    assert [d[i][i] for i in range(6)] == [1] * 6


def test_roundtrip_dict(k12a1105):
    again = parse_presentation(json.dumps(k12a1105.to_dict()))
    assert again == k12a1105
