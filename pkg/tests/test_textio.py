import pytest

from wdrd import constructions as C
from wdrd import textio
from wdrd.graph import GraphError


def test_roundtrip(tmp_path):
    g = C.cayley((4, 4), C.DOOB_ORIENTED_CONNECTION)
    path = tmp_path / "g.dg"
    textio.write(g, path)
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.startswith(b"16 48\n")
    assert textio.read(path) == g


def test_comments_and_blank_lines():
    text = "# a directed triangle\n\n3 3\n0 1\n# middle\n1 2\n2 0\n"
    assert textio.loads(text) == C.cayley((3,), [1])


def test_edge_is_two_lines():
    assert textio.dumps(C.complete_graph(2)) == "2 2\n0 1\n1 0\n"


@pytest.mark.parametrize("text", ["", "# only\n", "3 2\n0 1\n", "3 1\n0 x\n", "3 1\n0 1 2\n", "3 1\n1 1\n"])
def test_malformed(text):
    with pytest.raises(GraphError):
        textio.loads(text)
