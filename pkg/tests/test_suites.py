"""Every registered suite at reduced bounds. The full-size runs live in the
acceptance file."""
import pytest

from deskbqo.suites import SUITES, run_suite

SMALL = {
    "qo-laws": {"bound": 2},
    "pf-witness": {"bound": 2},
    "hset-order": {"atoms": 2, "height": 2, "children": 2},
    "hset-lemmas": {"atoms": 2, "height": 2, "children": 2},
    "tc-order": {"omega": 3},
    "tc-chi": {"omega": 3},
    "eps-linearity": {"omega": 2, "lh": 3},
    "eps-lemmas": {"omega": 2, "lh": 3, "shift": 1},
    "omega-pow": {"size": 2, "length": 3},
    "tree-orders": {"nodes": 3},
    "tree-s2w": {"nodes": 3},
    "embed-h": {"alpha": 2, "length": 2},
    "embed-finq": {"n": 3},
    "embed-prod": {"omega": 2},
    "embed-j": {"lh": 3, "shift": 1},
    "embed-j-atoms": {"lh": 3, "shift": 1},
    "triangle": {"base": 6, "length": 3},
    "power-block": {"base": 4, "maxlen": 2, "power": 2},
    "star": {"base": 3, "maxlen": 2},
    "lift-badness": {},
    "o-descent": {},
    "search-oracle": {"cells": 8, "targets": 4},
    "round-trip": {"bound": 2},
}


def test_every_suite_has_small_bounds():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_passes(name):
    rep = run_suite(name, SMALL[name])
    assert rep["cases"] > 0
    assert rep["failure_count"] == 0, rep["failures"][:5]


# the smallest atom counterexample, (eps0 ((()))), has length 4
@pytest.mark.parametrize("name,lh", [("eps-lemmas", 3), ("embed-j", 3), ("embed-j-atoms", 4)])
def test_unshifted_variant_has_the_known_counterexample(name, lh):
    rep = run_suite(name, {**SMALL[name], "lh": lh, "shift": 0})
    assert rep["failure_count"] > 0


@pytest.mark.parametrize("name", ["tc-chi", "star", "hset-order"])
def test_report_independent_of_workers(name):
    a = run_suite(name, SMALL[name], workers=1)
    b = run_suite(name, SMALL[name], workers=2)
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_unknown_bound_rejected():
    with pytest.raises(KeyError):
        run_suite("tc-chi", {"nope": 1})
