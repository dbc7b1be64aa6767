import json
import os
import subprocess
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURE_DIR = os.path.join(ROOT, "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


def run_cli(*args, **kwargs):
    """Run the installed CLI in a subprocess and capture everything."""
    cmd = [sys.executable, "-m", "excprimes.cli", *map(str, args)]
    return subprocess.run(cmd, capture_output=True, text=True, **kwargs)


@pytest.fixture(scope="session")
def fx81():
    from excprimes import NewformFixture

    return NewformFixture.from_json_file(fixture_path("81-6c.json"))


@pytest.fixture(scope="session")
def fx81_printed():
    from excprimes import NewformFixture

    return NewformFixture.from_json_file(fixture_path("81-6c-printed.json"))


@pytest.fixture(scope="session")
def fx11_4():
    from excprimes import NewformFixture

    return NewformFixture.from_json_file(fixture_path("11-4a.json"))


@pytest.fixture(scope="session")
def fx11_2():
    from excprimes import NewformFixture

    return NewformFixture.from_json_file(fixture_path("11-2a.json"))


@pytest.fixture()
def fixture_json():
    """Raw dict of a fixture file, for mutation-based malformed-input tests."""

    def load(name):
        with open(fixture_path(name)) as fh:
            return json.load(fh)

    return load
