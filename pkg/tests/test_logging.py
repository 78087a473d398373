import logging

from qrank.utils.logging import get_logger, setup_logging


def test_setup_logging_accepts_level_names_and_numbers():
    root = logging.getLogger()
    before = root.level
    try:
        setup_logging("debug")
        assert root.level == logging.DEBUG

        setup_logging("no-such-level")
        assert root.level == logging.INFO

        setup_logging(logging.WARNING)
        assert root.level == logging.WARNING
    finally:
        root.setLevel(before)


def test_get_logger_is_named():
    assert get_logger("qrank.services.walk").name == "qrank.services.walk"
