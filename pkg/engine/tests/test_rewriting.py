import pytest

from core.errors import DuplicateRule, ReservedName, RuleNotEnabled, UnknownElement, UnknownRule
from core.multiset import EMPTY, Multiset
from core.rewriting import EPS, EPS_RULE, Rule, RunPrefix, System, apply, enabled, multiset_enabled_rules


def ms(*elements: str) -> Multiset:
    return Multiset.of(elements)


@pytest.fixture
def basic() -> System:
    return System.build(
        "ABCX",
        [
            Rule("mu1", ms("A", "A"), ms("B", "A")),
            Rule("mu2", ms("A"), ms("X")),
            Rule("mu3", ms("B"), ms("C")),
            Rule("mu4", ms("C"), ms("B")),
        ],
        ms("A", "A"),
    )


def test_enabled(basic):
    assert enabled(basic.rule("mu1"), ms("A", "A"))
    assert not enabled(basic.rule("mu3"), ms("A", "A"))
    assert enabled(EPS_RULE, EMPTY)


def test_apply(basic):
    assert apply(basic.rule("mu1"), ms("A", "A")) == ms("A", "B")
    assert apply(basic.rule("mu2"), ms("A", "X")) == ms("X", "X")
    assert apply(EPS_RULE, ms("X", "X")) == ms("X", "X")


def test_apply_requires_enabled(basic):
    with pytest.raises(RuleNotEnabled):
        apply(basic.rule("mu3"), ms("A"))


def test_apply_conserves_counts(basic):
    state = ms("A", "A", "B", "C")
    for rule in basic.rules:
        if enabled(rule, state):
            after = apply(rule, state)
            for element in basic.elements:
                assert after[element] == state[element] - rule.lhs[element] + rule.rhs[element]


def test_enabledness_is_monotone(basic):
    for rule in basic.rules:
        if enabled(rule, ms("A")):
            assert enabled(rule, ms("A") + ms("B", "C"))


def test_multiset_enabled_rules(basic):
    assert multiset_enabled_rules(basic, ms("A", "A")) == ["mu1", "mu2"]
    assert multiset_enabled_rules(basic, ms("X", "X")) == []
    empty = System.build("A", [], EMPTY)
    assert multiset_enabled_rules(empty, ms("A")) == []


def test_system_rejects_bad_declarations():
    with pytest.raises(ReservedName):
        System.build("A", [Rule(EPS, EMPTY, EMPTY)], EMPTY)
    with pytest.raises(DuplicateRule):
        System.build("A", [Rule("mu1", EMPTY, ms("A")), Rule("mu1", ms("A"), EMPTY)], EMPTY)
    with pytest.raises(UnknownElement):
        System.build("A", [Rule("mu1", EMPTY, ms("D"))], EMPTY)
    with pytest.raises(UnknownElement):
        System.build("A", [], ms("B"))


def test_rule_lookup(basic):
    assert basic.rule(EPS) is EPS_RULE
    assert basic.rule_ids == ["mu1", "mu2", "mu3", "mu4"]
    assert basic.order_of(EPS) == 4
    with pytest.raises(UnknownRule):
        basic.rule("mu9")


def test_run_prefix_text():
    prefix = RunPrefix((EMPTY, ms("A"), EMPTY), ("mu1", "mu2"))
    assert prefix.text() == "{} -mu1-> {A} -mu2-> {}"
    assert prefix.states_text() == "{} {A} {}"
    assert prefix.labels_text() == "mu1 mu2"
    assert prefix.length == 2
    with pytest.raises(ValueError):
        RunPrefix((EMPTY,), ("mu1",))
