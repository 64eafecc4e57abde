import io

import pytest

from motifstream.stream import (
    Edge, EdgeParseError, RecordRejected, dedup_stream, edge_key, make_rng,
    parse_edge_line, read_stream, write_edges,
)


def test_parse_basic():
    assert parse_edge_line("1 2") == (1, 2, None)
    assert parse_edge_line("  7\t3  99 \n") == (7, 3, 99)


@pytest.mark.parametrize("line", ["# comment", "", "   ", "#1 2"])
def test_parse_skips(line):
    assert parse_edge_line(line) is None


def test_self_loop_rejected():
    with pytest.raises(RecordRejected):
        parse_edge_line("3 3")


def test_non_integer_reports_line():
    with pytest.raises(EdgeParseError) as ei:
        parse_edge_line("1 x", lineno=12)
    assert ei.value.lineno == 12
    assert "line 12" in str(ei.value)


@pytest.mark.parametrize("line", ["1", "1 2 3 4", "1 2 ts"])
def test_bad_shapes(line):
    with pytest.raises(EdgeParseError):
        parse_edge_line(line)


def test_edge_key_unordered():
    assert Edge(1, 2, 1).key == Edge(2, 1, 5).key == edge_key(2, 1) == (1, 2)


def test_read_stream_indexes(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# header\n1 2\n2 3\n\n3 1\n")
    es = list(read_stream(p))
    assert [(e.u, e.v, e.t) for e in es] == [(1, 2, 1), (2, 3, 2), (3, 1, 3)]


def test_read_stream_error_has_file_line(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n2 b\n")
    with pytest.raises(EdgeParseError) as ei:
        list(read_stream(p))
    assert ei.value.lineno == 2


def test_shuffle_deterministic(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("".join(f"{i} {i + 1}\n" for i in range(50)))
    a = [(e.u, e.v) for e in read_stream(p, shuffle=True, seed=7)]
    b = [(e.u, e.v) for e in read_stream(p, shuffle=True, seed=7)]
    c = [(e.u, e.v) for e in read_stream(p, shuffle=True, seed=8)]
    assert a == b
    assert a != c
    assert sorted(a) == [(i, i + 1) for i in range(50)]
    assert [e.t for e in read_stream(p, shuffle=True, seed=7)] == list(range(1, 51))


def test_sort_by_timestamp(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2 30\n2 3 10\n3 4 20\n")
    es = list(read_stream(p, sort_by_timestamp=True))
    assert [(e.u, e.v) for e in es] == [(2, 3), (3, 4), (1, 2)]
    assert [e.ts for e in es] == [10, 20, 30]


def test_sort_needs_timestamps(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2 30\n2 3\n")
    with pytest.raises(ValueError):
        list(read_stream(p, sort_by_timestamp=True))


def test_shuffle_needs_bounded_source():
    class Pipe(io.StringIO):
        def seekable(self):
            return False

    with pytest.raises(ValueError):
        list(read_stream(Pipe("1 2\n"), shuffle=True, seed=1))


def test_dedup(tmp_path):
    src, dst = tmp_path / "a.txt", tmp_path / "b.txt"
    src.write_text("1 2\n2 1\n1 3\n")
    assert dedup_stream(src, dst) == 1
    assert dst.read_text() == "1 2\n1 3\n"


def test_dedup_identity(tmp_path):
    src, dst = tmp_path / "a.txt", tmp_path / "b.txt"
    text = "# graph\n1 2\n2 3 5\n3 1\n"
    src.write_text(text)
    assert dedup_stream(src, dst) == 0
    assert dst.read_text() == text


def test_dedup_empty(tmp_path):
    src, dst = tmp_path / "a.txt", tmp_path / "b.txt"
    src.write_text("")
    assert dedup_stream(src, dst) == 0
    assert dst.read_text() == ""


def test_write_edges_roundtrip(tmp_path):
    p = tmp_path / "e.txt"
    write_edges([(3, 4), (4, 5)], p)
    assert [(e.u, e.v) for e in read_stream(p)] == [(3, 4), (4, 5)]


def test_rng_reproducible():
    assert [make_rng(5).random() for _ in range(3)] == [make_rng(5).random() for _ in range(3)]
    with pytest.raises(TypeError):
        make_rng("5")
