from pathlib import Path

import pytest

from cicrdbo.rf.data import load_dataset, make_standin_wholesale

DATA_PATH = Path(__file__).resolve().parent.parent / "data" / "wholesale_customers.csv"


@pytest.fixture(scope="session")
def wholesale_path() -> Path:
    if not DATA_PATH.exists():
        DATA_PATH.parent.mkdir(parents=True, exist_ok=True)
        make_standin_wholesale(DATA_PATH)
    return DATA_PATH


@pytest.fixture(scope="session")
def wholesale(wholesale_path):
    return load_dataset(wholesale_path)
