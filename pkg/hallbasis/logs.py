from __future__ import annotations

import json
import logging
import sys
import time
from typing import Any, Dict, Optional, TextIO

PACKAGE_LOGGER = "hallbasis"


class JsonLineHandler(logging.Handler):
    """
    Logging handler that writes each record as one JSON object per line.
    Goes to stderr so that reports on stdout stay byte-stable.
    """
    def __init__(self, stream: Optional[TextIO] = None) -> None:
        super().__init__()
        self._stream = stream

    def payload(self, record: logging.LogRecord) -> Dict[str, Any]:
        return {
            "type": "LOG",
            "ts": record.created,
            "time": time.strftime("%Y-%m-%d %H:%M:%S", time.localtime(record.created)),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "funcName": record.funcName,
            "lineno": record.lineno,
        }

    def emit(self, record: logging.LogRecord) -> None:
        try:
            stream = self._stream or sys.stderr
            stream.write(json.dumps(self.payload(record), ensure_ascii=False) + "\n")
            stream.flush()
        except Exception:
            # Never raise from emit
            pass


def install_log_handler(level: int | str = logging.INFO, json_lines: bool = False,
                        stream: Optional[TextIO] = None) -> logging.Handler:
    """
    Install a single handler on the package logger, replacing one installed earlier.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    logger = logging.getLogger(PACKAGE_LOGGER)
    for h in list(logger.handlers):
        if getattr(h, "_hallbasis", False):
            logger.removeHandler(h)
    if json_lines:
        handler: logging.Handler = JsonLineHandler(stream)
    else:
        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    handler._hallbasis = True  # type: ignore[attr-defined]
    handler.setLevel(level)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return handler
