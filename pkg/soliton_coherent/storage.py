"""
Artifact writers. Files are replaced atomically; "-" means stdout.
"""
import json
import logging
import os
import sys
import tempfile
from typing import Any, Dict

import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _write_text(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logger.info(f"wrote {path}")


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_csv(frame: pd.DataFrame, path: str) -> None:
    _write_text(frame_to_csv(frame), path)


def payload_to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def write_json(payload: Dict[str, Any], path: str) -> None:
    _write_text(payload_to_json(payload), path)
