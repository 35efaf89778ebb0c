import json

from sym3.verify import SUITES, UnknownSuite, VerifyConfig, run_verify

import pytest


def test_registry_names():
    assert len(SUITES) == 9 and "table6" in SUITES


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_verify("nope")


@pytest.mark.parametrize("suite", ["gross-koblitz", "gauss", "conductor-powers", "table6"])
def test_small_bounds_pass(suite):
    rep = run_verify(suite, VerifyConfig(max_p=5, max_level=2))
    assert rep.passed, rep.table()
    assert rep.bounds == {"max_p": 5, "max_level": 2}
    json.dumps(rep.to_json())


def test_report_json_is_capped():
    rep = run_verify("epsilon-props", VerifyConfig(max_p=3, seed=2))
    for c in rep.to_json()["checks"]:
        assert len(c["failures"]) <= 10 and c["failure_count"] >= len(c["failures"])
    assert rep.to_json() == run_verify("epsilon-props", VerifyConfig(max_p=3, seed=2)).to_json()
