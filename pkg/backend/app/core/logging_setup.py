"""
OreSolve - Logging setup
"""

import logging

import coloredlogs

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logging(level: str = "INFO") -> None:
    """Install colored console logging once for CLI and API entry points"""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT)
    coloredlogs.install(level=level.upper(), fmt=LOG_FORMAT)
