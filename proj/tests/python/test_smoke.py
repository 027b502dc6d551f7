"""Smoke tests for the Python module.

Runs standalone (python3 test_smoke.py) or under pytest. FONDPS_FIXTURES
must point at the fixtures directory.
"""

import os
import sys

import fondps

FIXTURES = os.environ.get(
    "FONDPS_FIXTURES",
    os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"),
)


def fixture(name):
    return os.path.join(FIXTURES, name)


def test_parse_and_solve():
    task = fondps.parse_explicit_file(fixture("fig1.fond.json"))
    assert task.num_facts == 6
    assert task.num_actions == 6
    assert task.is_explicit
    assert "s_A" in task.state_names

    result = fondps.solve(task, pruning="identity", heuristic="hmax")
    assert result["outcome"] == "solved"
    assert result["solution_size"] == 5
    assert result["generated"] >= result["expanded"]
    mapped = dict(result["mappings"])
    assert mapped["s_C"] == "c_L"

    ok, violations = fondps.validate(task, result["mappings"])
    assert ok, violations


def test_validate_rejects_bad_policies():
    task = fondps.parse_explicit_file(fixture("fig1.fond.json"))
    ok, violations = fondps.validate(task, [("s_D", "d"), ("s_E", "e")])
    assert not ok
    assert any(rule == "init-coverage" for rule, _ in violations)


def test_compress():
    task = fondps.parse_explicit_file(fixture("fig1.fond.json"))
    result = fondps.solve(task, pruning="frontier")
    rules = fondps.compress(task, result["mappings"])
    assert len(rules) == 5
    for condition, _action in rules:
        assert len(condition) == 1


def test_scripted_deduction():
    task = fondps.parse_explicit_file(fixture("fig2.fond.json"))
    with open(fixture("fig2_walkthrough.order")) as handle:
        script = handle.read()
    result = fondps.solve(
        task, pruning="domain-frontier", expansion_order=script
    )
    assert result["outcome"] == "solved"
    assert result["solutions_from_concretizer"] == 1
    assert dict(result["mappings"])["s_D"] == "d_L"


def test_unsolvable_outcome():
    task = fondps.parse_explicit(
        """{"states": ["a", "b", "g"], "init": "a", "goals": ["g"],
            "actions": [{"label": "go", "from": "a", "outcomes": ["b"]}]}"""
    )
    result = fondps.solve(task)
    assert result["outcome"] == "bottom"
    assert "solution_size" not in result


def test_pddl_and_symmetries():
    with open(fixture("twins.pddl")) as handle:
        domain = handle.read()
    with open(fixture("twins_p2.pddl")) as handle:
        problem = handle.read()
    task = fondps.parse_pddl(domain, problem)
    assert task.num_actions == 2
    generators = fondps.symmetry_generators(task)
    assert len(generators) >= 1

    result = fondps.solve(task, pruning="frontier-sym", symmetry="canonical")
    assert result["outcome"] == "solved"


def test_errors_surface_as_exceptions():
    try:
        fondps.parse_explicit("{}")
    except fondps.PlannerError:
        pass
    else:
        raise AssertionError("expected PlannerError")


def main():
    failures = 0
    for name, test in sorted(globals().items()):
        if name.startswith("test_") and callable(test):
            try:
                test()
                print(f"ok   {name}")
            except Exception as error:  # noqa: BLE001
                failures += 1
                print(f"FAIL {name}: {error}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
