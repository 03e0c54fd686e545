import doctest
import importlib

import pytest

MODULES = ["core_perm", "sorting_maps", "fertility", "weak_order", "partition_dynamics",
           "montecarlo", "analytic_bounds", "reporting", "cli"]


@pytest.mark.parametrize("name", MODULES)
def test_module_doctests(name):
    module = importlib.import_module(f"stacksort.{name}")
    result = doctest.testmod(module)
    assert result.failed == 0
