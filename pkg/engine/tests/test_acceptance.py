"""ゴールデンモデルの受け入れ検査と、乱数系に対する性質検査"""

from collections import deque

import pytest

from core.multiset import Multiset
from core.rewriting import EPS
from regulation import NEUTRAL_CLASSES, RegularRegulation, Unregulated, neutral_regulation
from services.model_io_service import ModelDocument
from tests.conftest import GOLDEN_MODELS, run_path
from tests.oracles import (
    RANDOM_REGULATIONS,
    random_concurrent_free,
    random_ordered,
    random_regulated,
    random_system,
    regular_label_prefixes,
)

GOLDEN_RUNS = [
    ("basic", "basic_valid", "basic_cycle", None),
    ("regular_alternation", "regular_alternation_valid", "regular_alternation_invalid", 4),
    ("ordered_pair", "ordered_pair_valid", "ordered_pair_invalid", 3),
    ("programmed_alternation", "programmed_alternation_valid", "programmed_alternation_invalid", 2),
    ("conditional_context", "conditional_context_valid", "conditional_context_invalid", 3),
    ("concurrent_free_priority", "concurrent_free_priority_valid", "concurrent_free_priority_invalid", 4),
]


def _sequences(explorer, system, regulation, depth):
    return set(explorer.state_sequences(system, regulation, depth))


# ---------- 図のラン ----------


@pytest.mark.parametrize("model, valid, other, step", GOLDEN_RUNS)
def test_golden_runs_report_first_violation(model, valid, other, step, explorer, model_io, load_model):
    document = load_model(model)
    for name, expected_step in ((valid, None), (other, step)):
        run = model_io.load_run(run_path(name), document.system)
        verdict = explorer.validate_run(document.system, document.regulation, run.labels, run.omega_eps_tail)
        assert verdict.valid == (expected_step is None), name
        assert verdict.step == expected_step, name


def test_golden_applicable_sets(explorer, load_model):
    conditional = load_model("conditional_context")
    config = explorer.initial(conditional.system, conditional.regulation)
    for label in ["mu1", "mu1", "mu2", "mu2"]:
        config = explorer.step(conditional.system, conditional.regulation, config, label)
    assert config.state == Multiset.of(["B", "B"])
    assert explorer.applicable(conditional.system, conditional.regulation, config) == [EPS]

    priority = load_model("concurrent_free_priority")
    config = explorer.step(priority.system, priority.regulation, explorer.initial(priority.system, priority.regulation), "mu1")
    assert explorer.applicable(priority.system, priority.regulation, config) == ["mu1", "mu2"]


@pytest.mark.parametrize("depth", range(1, 7))
def test_concurrent_free_witness_has_a_single_run(depth, explorer, load_model):
    document = load_model("concurrent_free_witness")
    prefixes = explorer.enumerate(document.system, document.regulation, depth)
    assert len(explorer.state_sequences(document.system, document.regulation, depth)) == 1
    assert [p.labels for p in prefixes] == [tuple(["mu1", "mu2"] * depth)[:depth]]


def chain_shaped(labels) -> bool:
    """mu1^n . mu2 . mu3^n . mu4 . eps* の接頭辞か"""
    n = 0
    while n < len(labels) and labels[n] == "mu1":
        n += 1
    rest = labels[n:]
    if not rest:
        return True
    if rest[0] != "mu2":
        return False
    rest = rest[1:]
    k = 0
    while k < len(rest) and rest[k] == "mu3":
        k += 1
    if k > n:
        return False
    rest = rest[k:]
    if not rest:
        return True
    return k == n and rest[0] == "mu4" and all(label == EPS for label in rest[1:])


def test_concurrent_free_chain_runs(explorer, load_model):
    document = load_model("concurrent_free_chain")
    labels = [p.labels for p in explorer.enumerate(document.system, document.regulation, 7)]
    for word in labels:
        assert chain_shaped(word), word
    assert ("mu1", "mu1", "mu2", "mu3", "mu3", "mu4", EPS) in labels
    assert ("mu2", "mu4") + (EPS,) * 5 in labels
    assert not chain_shaped(("mu1", "mu2", "mu4"))


# ---------- 中立規制 ----------


def test_neutral_regulations_change_nothing(explorer, rng):
    for _ in range(100):
        system = random_system(rng)
        expected = _sequences(explorer, system, Unregulated(), 5)
        for class_name in NEUTRAL_CLASSES:
            assert _sequences(explorer, system, neutral_regulation(class_name, system), 5) == expected, (
                class_name,
                system,
            )


def test_ordered_pair_is_a_proper_restriction(explorer, load_model):
    ordered = load_model("ordered_pair")
    free = load_model("ordered_pair_unregulated")
    result = explorer.bounded_equiv((ordered.system, ordered.regulation), (free.system, free.regulation), 4)
    assert not result.equal
    assert result.witness.labels == ("mu1", "mu2", "mu1", "mu1")


# ---------- 変換 ----------


def test_ordered_to_programmed_is_exact(explorer, transforms, load_model, rng):
    cases = [(load_model("ordered_pair").system, load_model("ordered_pair").regulation)]
    for _ in range(50):
        system = random_system(rng)
        cases.append((system, random_ordered(rng, system)))
    for system, regulation in cases:
        translation = transforms.or_to_pr(system, regulation)
        assert explorer.bounded_equiv((system, regulation), (translation.system, translation.regulation), 6).equal


def test_concurrent_free_to_conditional_is_exact(explorer, transforms, load_model, rng):
    cases = [
        (document.system, document.regulation)
        for document in (load_model("concurrent_free_priority"), load_model("concurrent_free_witness"))
    ]
    for _ in range(50):
        system = random_system(rng)
        cases.append((system, random_concurrent_free(rng, system)))
    for system, regulation in cases:
        translation = transforms.cfr_to_cr(system, regulation)
        assert explorer.bounded_equiv((system, regulation), (translation.system, translation.regulation), 6).equal
        pairs = sorted(regulation.pairs)
        if len(pairs) >= 2:
            reordered = transforms.cfr_to_cr(system, regulation, pair_order=list(reversed(pairs)))
            shuffled = [pairs[i] for i in rng.permutation(len(pairs))]
            for other in (reordered, transforms.cfr_to_cr(system, regulation, pair_order=shuffled)):
                assert other.regulation == translation.regulation
                assert other.removed_rules == translation.removed_rules


def test_conditional_strictness_witness(explorer, load_model):
    document = load_model("conditional_two_runs")
    for depth in range(1, 7):
        assert len(_sequences(explorer, document.system, document.regulation, depth)) == 2


# ---------- 正則規制 ----------


def test_regular_prefixes_match_oracle(explorer, load_model):
    document = load_model("regular_alternation")
    regulation = document.regulation
    prefixes = explorer.enumerate(document.system, regulation, 8)
    labels = {p.labels for p in prefixes}
    for word in labels:
        assert regulation.automaton.prefix_viable(word)
    assert labels == regular_label_prefixes(document.system, regulation.expr, 8)


def test_regular_terminal_outputs(explorer, load_model):
    document = load_model("regular_alternation")
    report = explorer.terminal_outputs(document.system, document.regulation, "B", 6)
    assert report.values <= {0, 1}


# ---------- レジスタ機械 ----------


@pytest.mark.parametrize("name, scale", [("identity", 1), ("doubling", 2)])
@pytest.mark.parametrize("target", ["cr", "cfr"])
def test_register_machine_pipeline(name, scale, target, explorer, machines, load_program):
    program = load_program(name)
    system, regulation = machines.compile(program, target)
    assert regulation.validate(system) == []
    for n in range(6):
        report = explorer.terminal_outputs(machines.with_input(system, n), regulation, "c2", 200)
        assert report.all_terminated
        assert report.values == {scale * n} == {machines.interpret_rm(program, n)}
        assert report.max_branching == 1


# ---------- ε の性質 ----------


def _check_eps_invariants(explorer, system, regulation, depth):
    start = explorer.initial(system, regulation)
    seen = {start}
    queue = deque([(start, 0)])
    regular = isinstance(regulation, RegularRegulation)
    while queue:
        config, level = queue.popleft()
        rules = explorer.applicable(system, regulation, config)
        if not regular:
            assert rules, config
        if EPS in rules:
            assert rules == [EPS]
            after = explorer.step(system, regulation, config, EPS)
            assert after.state == config.state
            if not regular:
                assert after == config
                assert explorer.applicable(system, regulation, after) == [EPS]
        if level == depth:
            continue
        for rule_id in rules:
            successor = explorer.step(system, regulation, config, rule_id)
            if successor not in seen:
                seen.add(successor)
                queue.append((successor, level + 1))


def test_eps_invariants_on_golden_models(explorer, load_model):
    for name in GOLDEN_MODELS:
        document = load_model(name[: -len(".rmrs")])
        _check_eps_invariants(explorer, document.system, document.regulation, 5)


def test_eps_invariants_on_random_models(explorer, rng):
    kinds = sorted(RANDOM_REGULATIONS)
    for index in range(100):
        system = random_system(rng)
        regulation = random_regulated(rng, kinds[index % len(kinds)], system)
        _check_eps_invariants(explorer, system, regulation, 5)


# ---------- トレース則 ----------


def test_trace_laws(explorer, rng):
    for _ in range(30):
        system = random_system(rng)
        free = _sequences(explorer, system, Unregulated(), 4)

        ordered = random_ordered(rng, system)
        for prefix in explorer.enumerate(system, ordered, 4):
            rules = [label for label in prefix.labels if label != EPS]
            for before, after in zip(prefix.labels, prefix.labels[1:]):
                if EPS not in (before, after):
                    assert (after, before) not in ordered.closure
            if len(rules) == prefix.length:
                assert prefix.states in free

        regular = random_regulated(rng, "RR", system)
        for prefix in explorer.enumerate(system, regular, 4):
            assert regular.automaton.prefix_viable(prefix.labels)


def test_bounded_equiv_is_reflexive_and_symmetric(explorer, rng):
    for _ in range(20):
        system = random_system(rng)
        a = (system, random_regulated(rng, "CR", system))
        b = (system, random_regulated(rng, "PR", system))
        assert explorer.bounded_equiv(a, a, 4).equal
        assert explorer.bounded_equiv(a, b, 4).equal == explorer.bounded_equiv(b, a, 4).equal


# ---------- 直列化 ----------


def test_random_models_survive_serialization(model_io, rng):
    kinds = sorted(RANDOM_REGULATIONS)
    for index in range(100):
        system = random_system(rng)
        document = ModelDocument(system, random_regulated(rng, kinds[index % len(kinds)], system))
        text = model_io.serialize_model(document)
        assert model_io.parse_model(text) == document, text
