import json
from pathlib import Path

import pytest

from polariton_gate import load_config

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="session")
def paper_loaded():
    return load_config(CONFIG_DIR / "paper_point.json")


@pytest.fixture(scope="session")
def paper_config(paper_loaded):
    return paper_loaded.experiment


@pytest.fixture(scope="session")
def pi_loaded():
    return load_config(CONFIG_DIR / "pi_gate.json")


@pytest.fixture(scope="session")
def pi_config(pi_loaded):
    return pi_loaded.experiment


@pytest.fixture(scope="session")
def paper_config_dict():
    return json.loads((CONFIG_DIR / "paper_point.json").read_text())


@pytest.fixture(scope="session")
def pi_config_dict():
    return json.loads((CONFIG_DIR / "pi_gate.json").read_text())


def write_config(tmp_path: Path, data: dict, name: str = "config.json") -> Path:
    path = tmp_path / name
    path.write_text(json.dumps(data, indent=2))
    return path
