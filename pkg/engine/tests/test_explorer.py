import pytest
from pydantic import ValidationError

from core.errors import ExplosionLimit, NotApplicable, UnknownRule
from core.multiset import Multiset
from core.rewriting import EPS, Rule, System
from omega.expression import parse_omega
from regulation import RegularRegulation, Unregulated
from services.explorer_service import ExplorationSettings, ExplorerService
from tests.conftest import run_path
from tests.oracles import RANDOM_REGULATIONS, random_regulated, random_system


def ms(*elements: str) -> Multiset:
    return Multiset.of(elements)


def labels_of(prefixes):
    return [p.labels for p in prefixes]


RUN_VERDICTS = [
    ("basic", "basic_valid", "Valid"),
    ("basic", "basic_cycle", "Valid"),
    ("regular_alternation", "regular_alternation_valid", "Valid"),
    ("regular_alternation", "regular_alternation_invalid", "Invalid(step 4, AutomatonDead)"),
    ("ordered_pair", "ordered_pair_valid", "Valid"),
    ("ordered_pair", "ordered_pair_invalid", "Invalid(step 3, RegulationForbids)"),
    ("programmed_alternation", "programmed_alternation_valid", "Valid"),
    ("programmed_alternation", "programmed_alternation_invalid", "Invalid(step 2, RegulationForbids)"),
    ("conditional_context", "conditional_context_valid", "Valid"),
    ("conditional_context", "conditional_context_invalid", "Invalid(step 3, RegulationForbids)"),
    ("concurrent_free_priority", "concurrent_free_priority_valid", "Valid"),
    ("concurrent_free_priority", "concurrent_free_priority_invalid", "Invalid(step 4, RegulationForbids)"),
]


@pytest.mark.parametrize("model, run, expected", RUN_VERDICTS)
def test_golden_run_verdicts(model, run, expected, explorer, model_io, load_model):
    document = load_model(model)
    run_file = model_io.load_run(run_path(run), document.system)
    verdict = explorer.validate_run(document.system, document.regulation, run_file.labels, run_file.omega_eps_tail)
    assert verdict.text() == expected


# ---------- ステップ意味論 ----------


def test_applicable_in_declaration_order(explorer, load_model):
    document = load_model("basic")
    config = explorer.initial(document.system, document.regulation)
    assert explorer.applicable(document.system, document.regulation, config) == ["mu1", "mu2"]


def test_eps_only_when_nothing_else_applies(explorer, load_model):
    document = load_model("ordered_pair")
    system, regulation = document.system, document.regulation
    config = explorer.initial(system, regulation)
    for label in ["mu1", "mu2"]:
        config = explorer.step(system, regulation, config, label)
    assert config.state == ms()
    assert explorer.applicable(system, regulation, config) == [EPS]
    after = explorer.step(system, regulation, config, EPS)
    assert after == config


def test_regular_dead_end_has_no_applicable_rules(explorer):
    system = System.build(["A"], [Rule("mu1", ms("A"), ms())], ms())
    regulation = RegularRegulation(parse_omega("mu1^w", ["mu1"]))
    config = explorer.initial(system, regulation)
    assert explorer.applicable(system, regulation, config) == []
    assert explorer.enumerate(system, regulation, 1) == []


def test_step_rejects_inapplicable_and_unknown_rules(explorer, load_model):
    document = load_model("basic")
    config = explorer.initial(document.system, document.regulation)
    with pytest.raises(NotApplicable):
        explorer.step(document.system, document.regulation, config, "mu3")
    with pytest.raises(NotApplicable):
        explorer.step(document.system, document.regulation, config, EPS)
    with pytest.raises(UnknownRule):
        explorer.step(document.system, document.regulation, config, "mu9")


# ---------- ラン検証 ----------


@pytest.mark.parametrize(
    "labels, expected",
    [
        (["mu3"], "Invalid(step 1, NotEnabled)"),
        ([EPS], "Invalid(step 1, EpsNotFallback)"),
        (["mu2", EPS], "Invalid(step 2, EpsNotFallback)"),
        (["mu2", "mu2", EPS, EPS], "Valid"),
        ([], "Valid"),
    ],
)
def test_validate_run_reasons(labels, expected, explorer, load_model):
    document = load_model("basic")
    assert explorer.validate_run(document.system, document.regulation, labels).text() == expected


def test_eps_tail_is_checked_after_the_last_label(explorer, load_model):
    ordered = load_model("ordered_pair")
    verdict = explorer.validate_run(ordered.system, ordered.regulation, ["mu1"], omega_eps_tail=True)
    assert verdict.text() == "Invalid(step 2, EpsNotFallback)"

    regular = load_model("regular_alternation")
    verdict = explorer.validate_run(regular.system, regular.regulation, ["mu1"], omega_eps_tail=True)
    assert verdict.text() == "Invalid(step 2, AutomatonDead)"
    verdict = explorer.validate_run(regular.system, regular.regulation, ["mu1", "mu2"], omega_eps_tail=True)
    assert not verdict.valid


# ---------- 列挙 ----------


def test_enumerate_alternation(explorer, load_model):
    document = load_model("programmed_alternation")
    prefixes = explorer.enumerate(document.system, document.regulation, 2)
    assert labels_of(prefixes) == [("mu1", "mu2"), ("mu2", "mu1")]


def test_enumerate_ordered_pair(explorer, load_model):
    document = load_model("ordered_pair")
    prefixes = explorer.enumerate(document.system, document.regulation, 3)
    assert labels_of(prefixes) == [("mu1", "mu1", "mu1"), ("mu1", "mu1", "mu2"), ("mu1", "mu2", EPS)]
    assert prefixes[2].states == (ms(), ms("A"), ms(), ms())


def test_enumerate_depth_zero(explorer, load_model):
    document = load_model("basic")
    prefixes = explorer.enumerate(document.system, document.regulation, 0)
    assert len(prefixes) == 1
    assert prefixes[0].states == (ms("A", "A"),)


def test_regular_lasso_allows_one_run(explorer, load_model):
    document = load_model("regular_lasso")
    prefixes = explorer.enumerate(document.system, document.regulation, 6)
    assert labels_of(prefixes) == [("mu1", "mu2", "mu1", "mu3", EPS, EPS)]


def test_conditional_choice_fixes_the_run(explorer, load_model):
    document = load_model("conditional_two_runs")
    sequences = explorer.state_sequences(document.system, document.regulation, 4)
    assert len(sequences) == 2


def test_enumerate_respects_the_cap(load_model):
    explorer = ExplorerService(ExplorationSettings(max_configs=3))
    document = load_model("basic")
    with pytest.raises(ExplosionLimit):
        explorer.enumerate(document.system, document.regulation, 4)


def test_settings_reject_bad_cap():
    with pytest.raises(ValidationError):
        ExplorationSettings(max_configs=0)
    with pytest.raises(ValidationError):
        ExplorationSettings(programmed_eps="never")


def test_programmed_strict_policy_cuts_prefixes(load_model):
    document = load_model("ordered_pair_as_programmed")
    fallback = ExplorerService().enumerate(document.system, document.regulation, 3)
    strict = ExplorerService(ExplorationSettings(programmed_eps="strict")).enumerate(
        document.system, document.regulation, 3
    )
    assert ("mu1", "mu2", EPS) in labels_of(fallback)
    assert labels_of(strict) == [("mu1", "mu1", "mu1"), ("mu1", "mu1", "mu2")]


@pytest.mark.parametrize("kind", sorted(RANDOM_REGULATIONS))
def test_enumerated_prefixes_validate(kind, rng, explorer):
    for _ in range(15):
        system = random_system(rng)
        regulation = random_regulated(rng, kind, system)
        for prefix in explorer.enumerate(system, regulation, 3):
            assert explorer.validate_run(system, regulation, prefix.labels).valid, prefix.labels_text()


# ---------- 有界等価性 ----------


def test_ordered_differs_from_unregulated(explorer, load_model):
    ordered = load_model("ordered_pair")
    free = load_model("ordered_pair_unregulated")
    result = explorer.bounded_equiv(
        (ordered.system, ordered.regulation), (free.system, free.regulation), 4
    )
    assert not result.equal
    assert result.witness_side == "b"
    assert result.witness.labels == ("mu1", "mu2", "mu1", "mu1")


def test_ordered_matches_its_programmed_translation(explorer, load_model):
    ordered = load_model("ordered_pair")
    programmed = load_model("ordered_pair_as_programmed")
    result = explorer.bounded_equiv(
        (ordered.system, ordered.regulation), (programmed.system, programmed.regulation), 5
    )
    assert result.equal
    assert result.witness is None


# ---------- 終端出力 ----------


def test_terminal_outputs_single_value(explorer):
    system = System.build(["A", "B"], [Rule("mu1", ms("A"), ms("B"))], ms("A", "A"))
    report = explorer.terminal_outputs(system, Unregulated(), "B", 2)
    assert report.values == {2}
    assert report.all_terminated
    assert report.max_branching == 1
    assert report.terminal_configs == 1
    assert report.max == 2


def test_terminal_outputs_depth_too_small(explorer):
    system = System.build(["A", "B"], [Rule("mu1", ms("A"), ms("B"))], ms("A", "A"))
    report = explorer.terminal_outputs(system, Unregulated(), "B", 1)
    assert report.values == set()
    assert not report.all_terminated
    assert report.max is None


def test_terminal_outputs_several_values(explorer):
    system = System.build(
        ["A", "B"], [Rule("mu1", ms("A"), ms("B")), Rule("mu2", ms("A"), ms("B", "B"))], ms("A")
    )
    report = explorer.terminal_outputs(system, Unregulated(), "B", 3)
    assert report.values == {1, 2}
    assert report.all_terminated
    assert report.max_branching == 2


def test_terminal_outputs_with_endless_branch(explorer, load_model):
    document = load_model("basic")
    report = explorer.terminal_outputs(document.system, document.regulation, "X", 5)
    assert report.values == {2}
    assert not report.all_terminated
    assert report.max_branching == 2


# ---------- 補助機能 ----------


def test_simulate_is_reproducible(explorer, load_model):
    document = load_model("concurrent_free_priority")
    first = explorer.simulate(document.system, document.regulation, 12, seed=7)
    second = explorer.simulate(document.system, document.regulation, 12, seed=7)
    assert first == second
    assert first.length == 12
    assert explorer.validate_run(document.system, document.regulation, first.labels).valid


def test_simulate_stops_at_dead_end(explorer):
    system = System.build(["A"], [Rule("mu1", ms("A"), ms())], ms())
    regulation = RegularRegulation(parse_omega("mu1^w", ["mu1"]))
    assert explorer.simulate(system, regulation, 5, seed=1).length == 0


def test_scan_extra_words(explorer, load_model):
    alternation = load_model("regular_alternation")
    extra = explorer.scan_extra_words(alternation.system, alternation.regulation, 1)
    assert extra == [("mu3",), (EPS,)]

    lasso = load_model("regular_lasso")
    assert explorer.scan_extra_words(lasso.system, lasso.regulation, 3) == []

    basic = load_model("basic")
    assert explorer.scan_extra_words(basic.system, basic.regulation, 2) == []
