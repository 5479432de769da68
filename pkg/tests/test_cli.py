import pytest

from src.cli import main
from src.config import Settings

KB = str(Settings.get_corpus_path("population-dynamics.kb"))
PREFS = str(Settings.get_corpus_path("population-dynamics.prefs"))
FROG = str(Settings.get_corpus_path("frog.scenario"))
SIX = str(Settings.get_corpus_path("six-attribute.problem"))

FROG_NOGOODS = (
    "{((model size-1 exponential) (model size-1 logistic)) "
    "((model size-1 exponential) (model size-1 other)) "
    "((model size-1 logistic) (model size-1 other)) "
    "((model size-1 other) (relevant growth frog))}"
)


def test_solve_frog_as_equations(capsys):
    code = main(["solve", "--kb", KB, "--scenario", FROG, "--prefs", PREFS, "--format", "ode-text"])
    assert code == 0
    assert capsys.readouterr().out == (
        "; solution 1 preference (p-logistic)\n"
        "(assumptions (model size-1 logistic)\n"
        "  (relevant growth frog))\n"
        "births-1 = birth-rate-2 * size-1\n"
        "deaths-1 = death-rate-2 * size-1 * total-population-1\n"
        "total-population-1 = size-1 / capacity-1\n"
        "d/dt size-1 = births-1 - deaths-1\n"
    )


def test_solve_frog_as_sexpr(capsys):
    assert main(["solve", "--kb", KB, "--scenario", FROG, "--prefs", PREFS]) == 0
    out = capsys.readouterr().out
    assert "(participants birth-rate-2\n" in out
    assert "  (d/dt size-1 (- births-1 deaths-1))" in out


def test_solve_problem_file(capsys):
    assert main(["solve", "--problem", SIX, "--max-solutions", "3"]) == 0
    assert capsys.readouterr().out == (
        "; solution 1 preference (p-holling p-logistic*2)\n"
        "(assignment (x1 yes)\n"
        "  (x2 yes)\n"
        "  (x3 yes)\n"
        "  (x4 logistic)\n"
        "  (x5 logistic)\n"
        "  (x6 holling))\n"
    )


def test_solve_with_search_oracle(capsys):
    assert main(["solve", "--problem", SIX, "--max-solutions", "5", "--oracle-bound", "1000"]) == 0


def test_dump_csp(capsys):
    assert main(["dump-csp", "--kb", KB, "--scenario", FROG, "--prefs", PREFS]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "; x2: (model size-1 exponential), (model size-1 logistic), (model size-1 other)" in lines
    assert "(defAttribute x2 :domain (exponential logistic other))" in lines
    assert "(defActivity x2 :when ((x1 yes)))" in lines
    assert "(defNogood ((x1 yes) (x2 other)))" in lines
    assert "(defPreference (x2 logistic) p-logistic)" in lines


def test_dump_space(capsys):
    assert main(["dump-space", "--kb", KB, "--scenario", FROG]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("; model space frog-scenario: ")
    assert lines[0].endswith(" nodes, 4 assumptions, 4 nogoods")
    assert "(inconsistency purpose ((model size-1 other) (relevant growth frog)))" in lines
    assert not any(line.startswith("0 ") for line in lines[1:])


def test_dump_labels_with_oracle(capsys):
    assert main(["dump-labels", "--kb", KB, "--scenario", FROG, "--oracle-bound", "16"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "size-1 :label {((relevant growth frog))}" in lines
    assert "frog :label {()}" in lines
    assert lines[-1] == f"nogood :label {FROG_NOGOODS}"


def test_oracle_bound_too_small(capsys):
    assert main(["dump-labels", "--kb", KB, "--scenario", FROG, "--oracle-bound", "2"]) == 1
    assert "exceeds the oracle bound" in capsys.readouterr().err


def test_check_kb(capsys):
    assert main(["check-kb", "--kb", KB]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "; knowledge base: 3 entities, 12 fragments, 4 properties, 0 scenarios"
    assert "(entity stock :subclass-of variable)" in lines
    assert "(property exogenous)" in lines
    assert "(fragment holling)" in lines


def test_unsatisfiable_requirement_exits_with_two(capsys):
    code = main(["solve", "--kb", KB, "--scenario", FROG, "--require", "(has-model frog)"])
    assert code == 2
    assert "no assignment" in capsys.readouterr().err


def test_undeclared_participant_reports_position(tmp_path, capsys):
    scenario = tmp_path / "bad.scenario"
    scenario.write_text("(defScenario bad\n  :entities ((a :type population))\n  :relations ((eats a b)))\n")
    assert main(["solve", "--kb", KB, "--scenario", str(scenario)]) == 1
    assert str(scenario) in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["solve", "--kb", "missing.kb", "--scenario", FROG],
    ["solve", "--problem", SIX, "--kb", KB],
    ["dump-space", "--problem", SIX],
    ["solve", "--kb", KB],
])
def test_invalid_invocations(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith("invalid configuration: ")


@pytest.mark.parametrize("requirement, code", [
    ("(endogenous size-1)", 0),
    ("(has-model frog)", 2),
])
def test_require_form_in_scenario_file(tmp_path, capsys, requirement, code):
    scenario = tmp_path / "frog-required.scenario"
    scenario.write_text(f"(defScenario frog-scenario\n  :entities ((frog :type population)))\n(require {requirement})\n")
    assert main(["solve", "--kb", KB, "--scenario", str(scenario), "--prefs", PREFS]) == code
    out = capsys.readouterr().out
    if code == 0:
        assert out.startswith("; solution 1 preference (p-logistic)\n")
