import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def configure_logging(verbosity=0):
    """
    Configures the root logger for command-line use.

    Args:
        verbosity (int): 0 for warnings only, 1 for info, 2 or more for debug

    Returns:
        int: The logging level that was applied
    """
    level = _VERBOSITY_LEVELS.get(verbosity, logging.DEBUG)
    # stderr only; stdout carries the report
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
    return level
