import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _no_precision_env(monkeypatch):
    # tests pick precisions explicitly
    monkeypatch.delenv("GANELIUS_PRECISION", raising=False)
