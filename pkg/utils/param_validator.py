import re

SPECTRUM_LABEL_PATTERN = r'^X\((\d+)\)$'


def validate_spectrum_label(label):
    """
    Validates a Thom spectrum label of the form X(m).

    Args:
        label (str): The label to validate, e.g. "X(11)"

    Returns:
        tuple: (is_valid, m, error_message)
    """
    if not label:
        return False, None, "Spectrum label cannot be empty"

    # Remove all whitespace
    label = label.replace(" ", "")
    if label.startswith("x("):
        label = "X" + label[1:]

    match = re.match(SPECTRUM_LABEL_PATTERN, label)
    if not match:
        return False, None, f"Invalid spectrum label '{label}', expected X(m) with m >= 0"

    return True, int(match.group(1)), ""


def validate_window(a, b):
    """
    Validates a cell window [a, b].

    Args:
        a (int | str): Bottom dimension
        b (int | str): Top dimension

    Returns:
        tuple: (is_valid, (a, b), error_message)
    """
    try:
        a, b = int(a), int(b)
    except (TypeError, ValueError):
        return False, None, f"Window bounds must be integers, got {a!r} and {b!r}"

    if a > b:
        return False, (a, b), f"Window bottom {a} lies above its top {b}"

    return True, (a, b), ""
