import pytest

from nonconformist.analysis.constructions import gk_system
from nonconformist.engine import State
from nonconformist.rules import AntiThreshold, CountSet, SubsetSystem, Threshold
from nonconformist.textformat import SystemFormatError, parse_rule, parse_system, render_rule, render_system


def test_single_edge_document():
    doc = parse_system("n 2\ne 1 2\nrule 1 anti 1\nrule 2 thr 1\ninit ++\n")
    assert doc.config.rules == (AntiThreshold(1), Threshold(1))
    assert doc.init == State.from_string("++")


def test_duplicate_edge_has_line_number():
    with pytest.raises(SystemFormatError) as exc:
        parse_system("n 2\ne 1 2\ne 1 2\n")
    assert exc.value.line == 3
    assert "duplicate edge" in str(exc.value)


def test_count_rule_beyond_degree_is_rejected():
    # v1 has one neighbour, so a count of 2 can never occur
    with pytest.raises(SystemFormatError, match="outside 0..1") as exc:
        parse_system("n 3\ne 1 2\nl 2\nrule 1 count {0,2}\n")
    assert exc.value.line == 4


def test_defaults_and_count_rule():
    doc = parse_system("n 3\ne 1 2\ne 1 3\nl 2\nrule 1 count {0,2}\n")
    assert doc.config.graph.has_loop(2)
    assert doc.config.rule(1) == CountSet({0, 2})
    assert doc.config.rule(2) == Threshold(2)  # degree 2 via the loop
    assert doc.config.rule(3) == Threshold(1)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("e 1 2\n", "'n' must come"),
        ("n 2\ne 1 3\n", "out of range"),
        ("n 2\ne 1 2\nrule 1 thr 5\n", "threshold"),
        ("n 2\ne 1 2\nrule 1 count {3}\n", "count"),
        ("n 2\nrule 1 bogus\n", "rule"),
        ("n 2\ninit +\n", "opinions"),
        ("n 2\nfoo\n", "unknown directive"),
        ("", "missing"),
        ("n 2\ne 1 1\n", "loop"),
    ],
)
def test_errors(text, fragment):
    with pytest.raises(SystemFormatError, match=fragment):
        parse_system(text)


def test_round_trip_gk():
    cfg, s0 = gk_system(3)
    text = render_system(cfg, [s0], params={"note": "x y"}, comment="G_3")
    doc = parse_system(text)
    assert doc.config == cfg
    assert doc.inits == [s0]
    assert doc.params == {"note": "x y"}
    assert render_system(doc.config, doc.inits, doc.params, "G_3") == text


def test_rule_syntax_round_trip():
    for rule, deg in [
        (Threshold(0), 2),
        (AntiThreshold(3), 2),
        (CountSet({0, 2, 3, 4}), 4),
        (CountSet(()), 1),
        (SubsetSystem([[], [2, 3]]), 2),
    ]:
        assert parse_rule(render_rule(rule), deg) == rule


def test_majority_and_minority_keywords():
    doc = parse_system("n 4\ne 1 2\ne 1 3\ne 1 4\nrule 1 minority\nrule 2 majority\n")
    assert doc.config.rule(1) == AntiThreshold(2)
    assert doc.config.rule(2) == Threshold(1)
