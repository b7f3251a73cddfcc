import json
import pathlib
import subprocess

import pytest


def pytest_addoption(parser):
    parser.addoption("--cli", required=True, help="path to the cp1ent executable")
    parser.addoption("--schemas", required=True, help="directory holding *.schema.json")


@pytest.fixture(scope="session")
def run(request):
    exe = request.config.getoption("--cli")

    def _run(*args, env=None, check=True):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True, env=env)
        if check:
            assert proc.returncode == 0, proc.stderr
        return proc

    return _run


@pytest.fixture(scope="session")
def schema(request):
    root = pathlib.Path(request.config.getoption("--schemas"))
    return lambda name: json.loads((root / f"{name}.schema.json").read_text())
