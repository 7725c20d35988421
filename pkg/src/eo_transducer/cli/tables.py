from pathlib import Path
from typing import Final

import pandas as pd
import structlog

logger = structlog.get_logger(__name__)

# 17 significant digits round-trip every float64 exactly
FLOAT_FORMAT: Final[str] = "%.17g"


def write_table(frame: pd.DataFrame, path: Path) -> Path:
    """Write a result table as CSV with a fixed, platform-independent layout."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("table written", path=str(path), rows=len(frame), columns=list(frame.columns))
    return path
