import sys
import numpy as np

from config import opts
from utils.util_class import PreconditionException


def print_numeric_progress(count, total):
    msg = f"\r- Progress: {count}/{total}"
    sys.stderr.write(msg)
    sys.stderr.flush()
    if count == total:
        sys.stderr.write("\n")


def print_log(tag, message):
    print(f"[{tag}] {message}", file=sys.stderr)


def input_integer(message, minval=0, maxval=10000):
    while True:
        print(message)
        key = input()
        try:
            key = int(key)
            if key < minval or key > maxval:
                raise ValueError(f"Expected input is within range [{minval}~{maxval}], "
                                 f"but you typed {key}")
        except ValueError as e:
            print(e)
            continue
        break
    return key


def input_float(message, default):
    print(f"{message} (press enter for {default})")
    key = input()
    if key.strip() == "":
        return default
    try:
        return float(key)
    except ValueError as e:
        print(e, "-> use default", default)
        return default


def check_finite(values, name):
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        raise PreconditionException(f"{name} has NaN or Inf entries: {values}")
    return values


def format_number(value, digits=opts.CSV_DIGITS):
    return f"{value:.{digits}g}"


def uniform_grid(t_final, samples):
    """
    :param t_final: end of the interval starting at 0
    :param samples: number of samples including both ends
    :return: sample times [samples]
    """
    samples = max(int(samples), 2)
    return np.linspace(0., t_final, samples)
