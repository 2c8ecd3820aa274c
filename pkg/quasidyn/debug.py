"""Package logger for quasidyn.

Every module logs through a child of one cached logger. `QUASIDYN_DEBUG`
turns on debug output to `quasidyn_debug.log` (or `QUASIDYN_LOG`); the `--debug`
flag sets it and calls `reset_logger` so the next `get_logger` re-reads the
environment. Under an application that already configured a `main` or root
logger, records go to those handlers instead.
"""
import logging
import os
from typing import Optional


_LOGGER: Optional[logging.Logger] = None

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _debug_enabled() -> bool:
    level_env = os.environ.get("QUASIDYN_DEBUG", "0").lower()
    return level_env in {"1", "true", "yes", "on", "debug"}


def _file_handler(path: str, level: int) -> logging.Handler:
    fh = logging.FileHandler(path, encoding="utf-8")
    fh.setLevel(level)
    fh.setFormatter(logging.Formatter(_FORMAT))
    return fh


def reset_logger() -> None:
    """Forget the cached package logger so the next call re-reads the environment."""
    global _LOGGER
    if _LOGGER is not None:
        for handler in list(_LOGGER.handlers):
            _LOGGER.removeHandler(handler)
            try:
                handler.close()
            except Exception:
                pass
    _LOGGER = None


def get_logger(name: str = "quasidyn") -> logging.Logger:
    global _LOGGER
    if _LOGGER is not None:
        return _LOGGER.getChild(name)

    debug_enabled = _debug_enabled()
    level = logging.DEBUG if debug_enabled else logging.INFO

    main_logger = logging.getLogger("main")
    if main_logger.handlers:
        # Attach under an embedding application's 'main' logger and inherit
        # its level unless debug was requested explicitly.
        logger = main_logger.getChild("quasidyn")
        logger.setLevel(logging.DEBUG if debug_enabled else logging.NOTSET)
        if debug_enabled:
            log_path = os.environ.get("QUASIDYN_LOG") or os.path.join(os.getcwd(), "quasidyn_debug.log")
            try:
                logger.addHandler(_file_handler(log_path, logging.DEBUG))
            except OSError:
                pass
        _LOGGER = logger
        return logger.getChild(name)

    logger = logging.getLogger("quasidyn")
    logger.setLevel(level)

    if logger.handlers:
        _LOGGER = logger
        return logger.getChild(name)

    root_logger = logging.getLogger()
    if root_logger.handlers:
        _LOGGER = logger
        return logger.getChild(name)

    log_path = os.environ.get("QUASIDYN_LOG")
    if log_path:
        log_path = os.path.expanduser(log_path)
    elif debug_enabled:
        log_path = os.path.join(os.getcwd(), "quasidyn_debug.log")

    handler_added = False
    if log_path:
        try:
            logger.addHandler(_file_handler(log_path, level))
            handler_added = True
        except OSError as exc:
            stream_handler = logging.StreamHandler()
            stream_handler.setLevel(level)
            stream_handler.setFormatter(logging.Formatter(_FORMAT))
            logger.addHandler(stream_handler)
            handler_added = True
            logger.warning(
                "Failed to create log file '%s': %s. Falling back to standard error.",
                log_path,
                exc,
            )

    if not handler_added:
        logger.addHandler(logging.NullHandler())

    _LOGGER = logger
    return logger.getChild(name)
