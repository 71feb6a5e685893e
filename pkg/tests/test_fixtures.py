"""Each negative fixture must fail at exactly its intended condition, with
every earlier condition passing."""

import json
import os

import pytest

from treechains.covers import ScheduleError
from treechains.serialize import FormatError, instance_from_json
from treechains.verify import CONDITIONS, verify_instance

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

CASES = [
    ("eps_nondecreasing.json", "schema"),
    ("broken_commutativity.json", "commutative"),
    ("proximity_edit.json", "proximity-free"),
    ("phi_equals_g.json", "D1"),
    ("inflated_radius.json", "enlargement-disjoint"),
]


def load(name):
    with open(os.path.join(FIXTURES, name)) as fh:
        return json.load(fh)


@pytest.mark.parametrize("name,condition", CASES)
def test_fails_exactly_at_condition(name, condition):
    payload = load(name)
    if condition == "schema":
        with pytest.raises((FormatError, ScheduleError)):
            instance_from_json(payload)
        return
    report = verify_instance(instance_from_json(payload))
    statuses = {r.name: r.status for r in report.results}
    assert statuses[condition] == "FAIL"
    for earlier in CONDITIONS[:CONDITIONS.index(condition)]:
        assert statuses[earlier] == "PASS", (earlier, statuses)
    assert not report.passed


@pytest.mark.parametrize("name,condition", CASES)
def test_cli_exit_code_nonzero(name, condition, capsys):
    from treechains.cli import main
    assert main(["verify", os.path.join(FIXTURES, name)]) == 1
    out = capsys.readouterr().out
    assert "overall                FAIL" in out


def test_fixture_corpus_complete():
    present = sorted(f for f in os.listdir(FIXTURES) if f.endswith(".json"))
    assert present == sorted(name for name, _ in CASES)
