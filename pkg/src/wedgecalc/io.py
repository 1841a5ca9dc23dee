"""Reading and writing complexes.

Two input formats are accepted: JSON
``{"vertices": [1, 2, 3, 4], "maximal_faces": [[1, 2], [1, 3]]}`` and plain
text with one maximal face per line (space-separated labels, ``#`` starts a
comment).  In the text format the vertex set is the union of the faces.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import SimplicialComplex, build_complex
from .errors import ParseError, WedgeCalcError


def complex_from_json(data: object) -> SimplicialComplex:
    if not isinstance(data, dict) or "maximal_faces" not in data:
        raise ParseError('expected an object with "maximal_faces"')
    faces = data["maximal_faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise ParseError('"maximal_faces" must be a list of lists')
    for f in faces:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise ParseError(f"face {f} has non-integer labels")
        if any(b <= a for a, b in zip(f, f[1:])):
            raise ParseError(f"face {f} is not strictly increasing")
    vertices = data.get("vertices")
    if vertices is None:
        vertices = sorted({v for f in faces for v in f})
    if not isinstance(vertices, list):
        raise ParseError('"vertices" must be a list')
    return build_complex(vertices, faces)


def complex_from_text(text: str) -> SimplicialComplex:
    faces = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            faces.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
    return build_complex(sorted({v for f in faces for v in f}), faces)


def parse_complex(text: str) -> SimplicialComplex:
    """Parse either format, deciding by the first non-blank character."""
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from None
            return complex_from_json(data)
        return complex_from_text(text)
    except ParseError:
        raise
    except WedgeCalcError as exc:
        raise ParseError(str(exc), cause=exc.code, **exc.payload) from exc


def load_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def dump_complex(K: SimplicialComplex) -> str:
    return json.dumps(K.to_json())
