"""Tests for logging setup."""
import io
import json
import logging

import pytest

from blmix.logging_config import HANDLER_TAG, get_logger, setup_logging


@pytest.fixture
def blmix_logger():
    logger = logging.getLogger("blmix")
    handlers, level = list(logger.handlers), logger.level
    yield logger
    logger.handlers[:] = handlers
    logger.setLevel(level)


def _own_handlers(logger):
    return [h for h in logger.handlers if getattr(h, HANDLER_TAG, False)]


def test_repeated_setup_keeps_one_handler(blmix_logger):
    setup_logging("INFO")
    setup_logging("DEBUG")
    assert len(_own_handlers(blmix_logger)) == 1
    assert blmix_logger.level == logging.DEBUG


def test_foreign_handlers_untouched(blmix_logger):
    stream = io.StringIO()
    foreign = logging.StreamHandler(stream)
    formatter = logging.Formatter("%(message)s")
    foreign.setFormatter(formatter)
    blmix_logger.addHandler(foreign)

    setup_logging("INFO", fmt="json")
    get_logger("blmix.mixing").info("kept")

    assert foreign.stream is stream
    assert foreign.formatter is formatter
    assert stream.getvalue() == "kept\n"


def test_json_format(blmix_logger, capsys):
    setup_logging("INFO", fmt="json")
    get_logger("chain").info("built kernel")
    line = capsys.readouterr().err.strip().splitlines()[-1]
    record = json.loads(line)
    assert record["msg"] == "built kernel"
    assert record["logger"] == "blmix.chain"
    assert record["level"] == "INFO"
