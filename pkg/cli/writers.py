import sys
import json
import numpy as np
import pandas as pd

from config import opts
from utils.util_class import OutputFileManager

FLOAT_FORMAT = f"%.{opts.CSV_DIGITS}g"


def to_serializable(value):
    """
    converts numpy scalars and arrays to plain python values,
    non-finite floats are written as the strings "inf", "-inf", "nan"
    """
    if isinstance(value, dict):
        return {str(key): to_serializable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_serializable(val) for val in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else str(value)
    return value


def dump_json(content):
    return json.dumps(to_serializable(content), sort_keys=True, indent=2, allow_nan=False)


def csv_header(command, params, units):
    """
    :param params: full parameter echo, written as one sorted JSON line
    :param units: column name -> unit
    :return: "#"-prefixed header lines
    """
    lines = [f"# {opts.TOOL_NAME} {opts.TOOL_VERSION} {command}",
             f"# params: {json.dumps(to_serializable(params), sort_keys=True)}"]
    lines += [f"# unit {column}: {unit}" for column, unit in units.items()]
    return "\n".join(lines) + "\n"


def write_table(handle, command, table, params, units):
    units = {column: units[column] for column in table.columns if column in units}
    handle.write(csv_header(command, params, units))
    table.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def save_csv(filepath, command, table, params, units):
    """
    :param filepath: output path, stdout when None
    :param table: pandas DataFrame
    """
    if filepath is None:
        write_table(sys.stdout, command, table, params, units)
        return
    with OutputFileManager([filepath]) as manager:
        with open(filepath, "w", encoding="utf-8", newline="\n") as handle:
            write_table(handle, command, table, params, units)
        manager.set_ok()


def save_json(filepath, content):
    text = dump_json(content) + "\n"
    if filepath is None:
        sys.stdout.write(text)
        return
    with OutputFileManager([filepath]) as manager:
        with open(filepath, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        manager.set_ok()


def read_csv(filepath):
    return pd.read_csv(filepath, comment="#", encoding="utf-8")
