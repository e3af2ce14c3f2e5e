import doctest
import importlib
import pkgutil
from pathlib import Path

import pytest

import galbrauer

MODULES = ["galbrauer"] + [
    f"galbrauer.{m.name}" for m in pkgutil.iter_modules(galbrauer.__path__) if m.name != "__main__"
]


@pytest.mark.parametrize("name", MODULES)
def test_doctests(name):
    result = doctest.testmod(importlib.import_module(name), optionflags=doctest.ELLIPSIS)
    assert result.failed == 0


def test_readme_examples():
    readme = Path(__file__).resolve().parents[1] / "README.md"
    result = doctest.testfile(str(readme), module_relative=False)
    assert result.failed == 0
