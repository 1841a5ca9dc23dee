import json

import pytest

from wedgecalc.complex import build_complex
from wedgecalc.errors import NotShifted, ParseError
from wedgecalc.io import dump_complex, load_complex, parse_complex


def test_both_formats_agree(worked, fixtures_dir):
    text = "# worked example\n1 2\n1 3\n1 4  # spoke\n2 3\n2 4\n\n"
    assert parse_complex(text) == worked
    assert load_complex(fixtures_dir / "worked.json") == worked
    assert parse_complex(dump_complex(worked)) == worked


def test_vertices_default_to_union():
    K = parse_complex('{"maximal_faces": [[1, 2], [3]]}')
    assert K.vertices == (1, 2, 3)


def test_ghost_vertices_are_kept():
    K = parse_complex('{"vertices": [1, 2, 3], "maximal_faces": [[1, 2]]}')
    assert K.missing_singletons() == (3,)


@pytest.mark.parametrize(
    "text",
    [
        '{"maximal_faces": [[2, 1]]}',
        '{"maximal_faces": [[1, "2"]]}',
        '{"maximal_faces": [[true]]}',
        '{"maximal_faces": [1, 2]}',
        '{"vertices": 3, "maximal_faces": []}',
        '{"vertices": [1], "maximal_faces": [[1, 2]]}',
        '{"faces": []}',
        "[1, 2]",
        "{not json",
        "1 x",
        "1 1 2",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_complex(text)


def test_error_objects():
    err = NotShifted("nope", witness=((1, 4), 4, 3))
    assert err.to_dict() == {"error": "NotShifted", "message": "nope", "payload": {"witness": [[1, 4], 4, 3]}}
    assert json.dumps(ParseError("x", cause="DuplicateVertexInFace").to_dict())
    assert isinstance(err, ValueError)


def test_dump_is_canonical():
    K = build_complex([3, 1, 2], [(2, 1), (3,)])
    assert json.loads(dump_complex(K)) == {"vertices": [1, 2, 3], "maximal_faces": [[3], [1, 2]]}
