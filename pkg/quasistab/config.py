"""
Toolkit Configuration
Environment variables, logging and global settings.
"""

import os
import logging

# Configuration from environment variables
LOG_LEVEL = os.getenv("QUASISTAB_LOG_LEVEL", "WARNING").upper()
RETRY_BUDGET = os.getenv("QUASISTAB_RETRY_BUDGET", "5000")
CENSUS_EDGE_LIMIT = os.getenv("QUASISTAB_CENSUS_EDGE_LIMIT", "12")
THRESHOLD_SEARCH_LIMIT = os.getenv("QUASISTAB_THRESHOLD_SEARCH_LIMIT", "200")

# Graph document schema
DOCUMENT_VERSION = 1

# Extra room around the singleton bounds when sizing brute-force boxes
BOX_PADDING = 1

# Validate configuration
_LEVEL_NAMES = getattr(logging, "getLevelNamesMapping", lambda: dict(logging._nameToLevel))()
if LOG_LEVEL not in _LEVEL_NAMES:
    raise ValueError(f"QUASISTAB_LOG_LEVEL has unknown level '{LOG_LEVEL}'")


def _positive_int(name: str, raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got '{raw}'") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


RETRY_BUDGET = _positive_int("QUASISTAB_RETRY_BUDGET", RETRY_BUDGET)
CENSUS_EDGE_LIMIT = _positive_int("QUASISTAB_CENSUS_EDGE_LIMIT", CENSUS_EDGE_LIMIT)
THRESHOLD_SEARCH_LIMIT = _positive_int("QUASISTAB_THRESHOLD_SEARCH_LIMIT", THRESHOLD_SEARCH_LIMIT)

# Configure logging (stderr, so command output stays deterministic)
logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s", level=LOG_LEVEL
)
logger = logging.getLogger(__name__)

logger.debug(f"Retry budget: {RETRY_BUDGET}, census edge limit: {CENSUS_EDGE_LIMIT}")
