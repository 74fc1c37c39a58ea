import pytest

from nonconformist.analysis.patterns import (
    LOOPLESS_CLASSES,
    PatternKind,
    classify_pattern,
    minimal_word,
    pattern_consistent,
)

P, M = 1, -1


@pytest.mark.parametrize(
    "seq,kind,sign",
    [
        ((P, P, M, M), PatternKind.PPMM, None),
        ((P, P, P), PatternKind.CONSTANT, 1),
        ((M,), PatternKind.CONSTANT, -1),
        ((M, P, P, M, M, P, P, P), PatternKind.EIGHT, -1),
        ((P, M, M, P, P, M, M, M), PatternKind.EIGHT, 1),
        ((P, M), PatternKind.ALTERNATING, None),
        ((P, P, P, M, M, M), PatternKind.PPPMMM, None),
        ((M, P, P, P), PatternKind.XXXM, 1),
        ((P, P, P, M, M) * 2, PatternKind.XXXMM, 1),
        ((M, M, M, P, P), PatternKind.XXXMM, -1),
        ((P, M, M), PatternKind.XMM, 1),
        ((M, P, P, M, P, P), PatternKind.XMM, -1),
    ],
)
def test_classify_examples(seq, kind, sign):
    cls = classify_pattern(seq)
    assert cls.kind is kind
    assert cls.sign == sign


def test_unclassified_and_errors():
    assert classify_pattern((P, P, M, P, M)) is None
    with pytest.raises(ValueError):
        classify_pattern(())
    with pytest.raises(ValueError):
        classify_pattern((P, 0))


def test_rotation_and_sign_invariance():
    base = (P, M, M, P, P, M, M, M)
    ref = classify_pattern(base)
    for k in range(8):
        rot = base[k:] + base[:k]
        assert classify_pattern(rot) == ref
        flipped = classify_pattern(tuple(-c for c in rot))
        assert flipped.kind is ref.kind and flipped.sign == -ref.sign


def test_minimal_word():
    assert minimal_word((P, M, P, M)) == (P, M)
    assert minimal_word((P, P, M)) == (P, P, M)


def test_consistency():
    assert pattern_consistent(classify_pattern((P, P, M, M)), 4)
    assert not pattern_consistent(classify_pattern((P, P, M, M)), 8)
    assert not pattern_consistent(classify_pattern((P, M, M)), 3, loopless=True)
    assert pattern_consistent(classify_pattern((P, P)), 2)
    assert len(LOOPLESS_CLASSES) == 6
