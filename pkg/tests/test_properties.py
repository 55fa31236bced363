"""Seed-fixed randomized property suites (at least 200 cases each)."""

import pytest

import suites


@pytest.mark.parametrize("suite", suites.ALL_SUITES,
                         ids=lambda fn: fn.__name__.removeprefix("run_"))
def test_property_suite(suite):
    assert suite() >= 200
