from dateutil.relativedelta import relativedelta
from reversible_bcd.constants import DEFAULT_CONFIG
from typing import List, Sequence
import copy
import logging
import os.path
import tomli


# https://stackoverflow.com/a/35804945/1691778
def addLoggingLevel(levelName, levelNum, methodName=None) -> None:
    """
    Adds a new logging level to the `logging` module and the currently
    configured logging class.

    `levelName` becomes an attribute of the `logging` module with the value
    `levelNum`. `methodName` becomes a convenience method for both `logging`
    itself and the class returned by `logging.getLoggerClass()`. If
    `methodName` is not specified, `levelName.lower()` is used.

    Calling it again for a level that is already installed with the same
    number is a no-op, so the CLI can be entered more than once per process
    (the test suite does this).

    Example
    -------
    >>> addLoggingLevel('TRACE', logging.DEBUG - 5)
    >>> logging.trace('gate 3 applied')
    >>> logging.TRACE
    5

    """
    if not methodName:
        methodName = levelName.lower()

    if getattr(logging, levelName, None) == levelNum:
        return
    if hasattr(logging, levelName):
        raise AttributeError(
            "{} already defined in logging module".format(levelName)
        )
    if hasattr(logging, methodName):
        raise AttributeError(
            "{} already defined in logging module".format(methodName)
        )
    if hasattr(logging.getLoggerClass(), methodName):
        raise AttributeError(
            "{} already defined in logger class".format(methodName)
        )

    def logForLevel(self, message, *args, **kwargs):
        if self.isEnabledFor(levelNum):
            self._log(levelNum, message, args, **kwargs)

    def logToRoot(message, *args, **kwargs):
        logging.log(levelNum, message, *args, **kwargs)

    logging.addLevelName(levelNum, levelName)
    setattr(logging, levelName, levelNum)
    setattr(logging.getLoggerClass(), methodName, logForLevel)
    setattr(logging, methodName, logToRoot)


def trace(message, *args) -> None:
    # TRACE is only installed by the CLI; library code must not depend on it.
    logging.log(logging.DEBUG - 5, message, *args)


def bits_to_int(bits) -> int:
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return value


def int_to_bits(value, width) -> List[int]:
    return [(value >> shift) & 1 for shift in range(width - 1, -1, -1)]


def parse_bitstring(text) -> List[int]:
    text = text.replace("_", "")
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"'{text}' is not a bit string")
    return [int(ch) for ch in text]


def format_bits(bits: Sequence[int]) -> str:
    return "".join(str(bit) for bit in bits)


def format_duration(duration) -> str:
    attrs = ["years", "months", "days", "hours", "minutes", "seconds"]
    delta = relativedelta(seconds=int(duration))
    text = ", ".join(
        [
            "%d %s"
            % (
                getattr(delta, attr),
                attr if getattr(delta, attr) > 1 else attr[:-1],
            )
            for attr in attrs
            if getattr(delta, attr)
        ]
    )
    return text or f"{duration:.3f} seconds"


def merge_config(base, override) -> dict:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_config(config_file=None) -> dict:
    if config_file is None or not os.path.isfile(config_file):
        logging.debug(f"No config file at {config_file}, using defaults.")
        return copy.deepcopy(DEFAULT_CONFIG)
    with open(config_file, "rb") as f:
        data = tomli.load(f)
    return merge_config(DEFAULT_CONFIG, data)