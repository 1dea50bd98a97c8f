import pytest

from monoglue.config import ENV_BOUND, Settings
from monoglue.monoid import PresentedMonoid, default_bound


def test_defaults(monkeypatch):
    monkeypatch.delenv(ENV_BOUND, raising=False)
    assert Settings.from_env() == Settings()
    assert default_bound() == 8


def test_env_override(monkeypatch):
    monkeypatch.setenv(ENV_BOUND, "5")
    assert default_bound() == 5
    assert PresentedMonoid("M", ["x"]).bound == 5
    monkeypatch.setenv(ENV_BOUND, "five")
    with pytest.raises(ValueError):
        Settings.from_env()
