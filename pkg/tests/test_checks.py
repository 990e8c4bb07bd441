from zlab import checks, corpus
from zlab.cli import main
from zlab.power_ideal import HilbertFunction


def test_results_are_sorted_and_labelled():
    res = checks.run_suite("brylawski", [("u23", corpus.load("u23"))], 0, False)
    assert [r.name for r in res] == sorted(r.name for r in res)
    assert all(r.criterion == 10 and r.anchor and r.passed for r in res)


def test_wrong_formula_is_caught(monkeypatch, capsys):
    def skewed(arr, k):
        return HilbertFunction([1] + [0] * arr.n + [1], True)

    monkeypatch.setattr(checks, "tutte_formula_hilbert", skewed)
    res = checks.run_suite("hilbert-formulas", [("u23", corpus.load("u23"))], 0, False)
    assert any(r.name.startswith("hilbert-formula") and not r.passed for r in res)
    assert main(["check", "corpus:u23", "--suite", "hilbert-formulas"]) == 2
    capsys.readouterr()
