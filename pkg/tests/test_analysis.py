import json

from hypothesis import given

from structctrl.analysis import CONDITIONS, analyze, format_report
from structctrl.catalog import weighted_rows_pair
from structctrl.model import build_pair
from structctrl.subgraphs import EnumerationLimits

from .conftest import binary_pairs


def test_eq4_all_true(eq4):
    rep = analyze(eq4)
    assert rep.verdicts == {c: True for c in CONDITIONS}
    assert rep.verdict is True and rep.consistent
    assert rep.unbalanced_class.key == ((2, 6), (1, 3, 4, 5))
    assert rep.generic_rank == rep.minform_rank == 4
    assert rep.num_subgraphs == 6 and rep.num_classes == 5
    assert rep.cactus.roots == [5, 6]


def test_repeated_rows_all_false(repeated):
    rep = analyze(repeated)
    assert rep.verdicts == {c: False for c in CONDITIONS}
    assert rep.generic_rank == 2
    assert "generic rank of [A B]: 2" in format_report(rep)


def test_reducible_pair_has_unreachable_witness():
    pair = build_pair(2, 1, [([1, 0], [0, 0, 1]), ([0, 1], [0, 1, 0])])
    rep = analyze(pair)
    assert rep.verdicts["iv"] is False
    assert rep.unreachable == [2]
    assert rep.verdict is False


def test_nonbinary_pair_runs_two_checks():
    rep = analyze(weighted_rows_pair())
    assert rep.verdicts["i"] is True and rep.verdicts["corfmat"] is True
    assert rep.verdicts["ii"] is None
    assert rep.verdict is True
    assert any("outside the binary class" in n for n in rep.notes)


def test_condition_selection(eq4):
    rep = analyze(eq4, "iv")
    assert list(rep.verdicts) == ["iv"]
    rep = analyze(eq4, ["i", "corfmat"])
    assert list(rep.verdicts) == ["i", "corfmat"]


def test_count_fallback_beyond_enumeration_limit(eq4):
    rep = analyze(eq4, limits=EnumerationLimits(max_subgraphs=3))
    assert rep.verdict is True and not rep.limit_flags
    assert any("exceed the enumeration limit" in n for n in rep.notes)


def test_enumeration_size_limit_flags(eq4):
    rep = analyze(eq4, limits=EnumerationLimits(max_n=3))
    assert rep.verdicts["iii"] is None and rep.verdicts["iv"] is None
    assert set(rep.limit_flags) == {"iii", "iv"}
    assert rep.verdict is True


def test_report_forms(eq4):
    rep = analyze(eq4)
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["structurally_controllable"] is True
    assert doc["unbalanced_class"]["sinks"] == [2, 6]
    text = format_report(rep, witness=True)
    assert "unbalanced class: sinks [2, 6] colors [1, 3, 4, 5]" in text
    assert "cactus at 5: trunk [5, 4, 1, 2]" in text
    assert "\x1b[" not in text
    assert "\x1b[32m" in format_report(rep, color=True)


@given(binary_pairs(max_n=5, max_m=2, max_q=9))
def test_checks_agree(pair):
    rep = analyze(pair)
    assert not rep.limit_flags
    assert rep.consistent and rep.verdict is not None
