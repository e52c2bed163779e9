"""Text format coverage: the builtin example corpus parses, emitters are
stable under a parse/emit cycle, and parse errors carry line numbers."""

import pytest

from endcycle import chains as ch
from endcycle import examples
from endcycle.graph import graph_from_text
from endcycle.vectors import parse_vector_text, vector_to_text
from endcycle.errors import FormatError


def test_example_names():
    names = examples.example_names()
    assert "double-ladder" in names
    assert len(names) >= 4


def test_unknown_example_suggests():
    with pytest.raises(KeyError, match="double-ladder"):
        examples.example_documents("double-lader")


def test_every_example_document_parses():
    for name in examples.example_names():
        docs = examples.example_documents(name)
        g = graph_from_text(docs[name + ".graph"])
        for fname, text in docs.items():
            if fname.endswith(".graph"):
                graph_from_text(text)
            elif fname.endswith(".vec"):
                parse_vector_text(g, text)
            elif fname.endswith(".chain"):
                ch.parse_chain_text(g, text)
            elif fname.endswith(".pair"):
                ch.parse_pair_text(g, text)
            else:
                pytest.fail("unclassified document %s" % fname)


def test_example_graph_matches_documents():
    g = examples.example_graph("double-ladder")
    assert g.spec.name == "double-ladder"


def test_all_graph_documents():
    seen = dict(examples.all_graph_documents())
    assert "double-ladder.graph" in seen
    assert "intro-plain.graph" in seen


def test_vector_emit_is_stable():
    for name in examples.example_names():
        docs = examples.example_documents(name)
        g = graph_from_text(docs[name + ".graph"])
        for fname, text in docs.items():
            if not fname.endswith(".vec"):
                continue
            v = parse_vector_text(g, text)
            emitted = vector_to_text(v)
            assert vector_to_text(parse_vector_text(g, emitted)) == emitted


def test_chain_emit_is_stable():
    for name in examples.example_names():
        docs = examples.example_documents(name)
        g = graph_from_text(docs[name + ".graph"])
        for fname, text in docs.items():
            if not fname.endswith(".chain"):
                continue
            rep = ch.parse_chain_text(g, text)
            emitted = ch.chain_to_text(rep)
            assert ch.chain_to_text(ch.parse_chain_text(g, emitted)) == emitted


def test_pair_emit_is_stable():
    g = examples.example_graph("double-ladder")
    docs = examples.example_documents("double-ladder")
    pair = ch.parse_pair_text(g, docs["positive-side.pair"])
    emitted = ch.pair_to_text(pair)
    assert ch.pair_to_text(ch.parse_pair_text(g, emitted)) == emitted


# --- line numbers in errors -------------------------------------------------

def test_graph_error_line(ladder):
    with pytest.raises(FormatError, match="line 3"):
        graph_from_text("graph g\nkind finite\nvortex a\n")


def test_vector_error_line(ladder):
    with pytest.raises(FormatError, match="line 2"):
        parse_vector_text(ladder, "set rung[0] = 1\nset rung[0] == 2")


def test_chain_error_line(ladder):
    with pytest.raises(FormatError, match="line 2"):
        ch.parse_chain_text(ladder, "pass rung[0] +\nskip rung[1] +")


def test_pair_error_line(ladder):
    with pytest.raises(FormatError, match="line 2"):
        ch.parse_pair_text(ladder, "delete top[0]\nretain top[3]")
