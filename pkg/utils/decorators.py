import sys
import functools
import dataclasses
import numpy as np
from config import opts


def describe_value(value):
    """
    :return: short text of array shape and dtype, also for array fields of dataclass values
        such as EigenFrame or StateVector
    """
    if isinstance(value, np.ndarray):
        return f"{value.dtype}{list(value.shape)}"
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        fields = [f"{field.name}={describe_value(getattr(value, field.name))}"
                  for field in dataclasses.fields(value)
                  if isinstance(getattr(value, field.name), np.ndarray)]
        return f"{type(value).__name__}({', '.join(fields)})"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(describe_value(val) for val in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{key}: {describe_value(val)}" for key, val in value.items()) + "}"
    return type(value).__name__


def shape_check_real(func):
    @functools.wraps(func)
    def decorator(*args, **kwargs):
        inputs = [describe_value(arg) for arg in args]
        inputs += [f"{key}={describe_value(val)}" for key, val in kwargs.items()]
        print(f"@shape_check {func.__name__} in: {', '.join(inputs)}", file=sys.stderr)
        out = func(*args, **kwargs)
        print(f"@shape_check {func.__name__} out: {describe_value(out)}", file=sys.stderr)
        return out
    return decorator


def shape_check_dummy(func):
    return func


# set opts.ENABLE_SHAPE_DECOR to trace array shapes through the numerical kernels
shape_check = shape_check_real if opts.ENABLE_SHAPE_DECOR else shape_check_dummy
