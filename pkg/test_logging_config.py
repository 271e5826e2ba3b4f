"""Silent by default, verbose under QSNA_LOG_LEVEL=DEBUG."""

import logging

import pytest

from qsna.logging_config import ROOT_LOGGER_NAME, get_logger


@pytest.fixture(autouse=True)
def restore_logger():
    yield
    root = logging.getLogger(ROOT_LOGGER_NAME)
    for handler in root.handlers[:]:
        root.removeHandler(handler)
    root.setLevel(logging.CRITICAL)


def test_normal_mode_is_silent(monkeypatch, capsys):
    monkeypatch.delenv("QSNA_LOG_LEVEL", raising=False)
    logger = get_logger()
    assert logger.level == logging.CRITICAL
    assert logger.handlers == []
    get_logger("qsna.geometry.simplex").warning("should not appear")
    captured = capsys.readouterr()
    assert "should not appear" not in captured.err + captured.out


def test_debug_mode_shows_child_loggers(monkeypatch):
    monkeypatch.setenv("QSNA_LOG_LEVEL", "debug")
    logger = get_logger()
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 1
    assert get_logger("qsna.arbitrage.local").getEffectiveLevel() == logging.DEBUG


def test_debug_mode_does_not_stack_handlers(monkeypatch):
    monkeypatch.setenv("QSNA_LOG_LEVEL", "DEBUG")
    get_logger()
    get_logger()
    assert len(get_logger().handlers) == 1


def test_switching_back_removes_handlers(monkeypatch):
    monkeypatch.setenv("QSNA_LOG_LEVEL", "DEBUG")
    get_logger()
    monkeypatch.setenv("QSNA_LOG_LEVEL", "CRITICAL")
    assert get_logger().handlers == []
