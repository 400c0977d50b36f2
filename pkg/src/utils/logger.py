import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path

# Project root: two levels up from src/utils
BASE_DIR = Path(__file__).resolve().parent.parent.parent

LOG_FILE_NAME = "scattering_lab.log"


def setup_logger(name: str):
    """
    Sets up a reusable logger that writes to a rotating file and the console.

    Args:
        name (str): Name of the engine or module (e.g., 'ScatteringEngine')

    Returns:
        logging.Logger: Configured logger instance
    """

    log_dir = os.path.join(BASE_DIR, "logs")
    os.makedirs(log_dir, exist_ok=True)

    logger = logging.getLogger(name)

    # Already configured by an earlier import
    if logger.hasHandlers():
        return logger

    level_name = os.getenv("SCATTERING_LOG_LEVEL", "INFO").upper()
    logger.setLevel(getattr(logging, level_name, logging.INFO))

    # [Timestamp] - [Module Name] - [Level] - [Message]
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # 5MB per file, 5 backups
    file_handler = RotatingFileHandler(
        os.path.join(log_dir, LOG_FILE_NAME),
        maxBytes=5 * 1024 * 1024,
        backupCount=5,
        encoding="utf-8",
    )
    file_handler.setFormatter(formatter)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)

    return logger
