import json
import logging
import math
import os
import sys

from .scalar_utils import get_field

logger = logging.getLogger(__name__)


def read_vector(vector_path, backend):
    """Read a JSON array of scalar strings into a backend vector."""
    logger.info(f"🔍 Reading vector from: {vector_path}")

    if not os.path.exists(vector_path):
        raise FileNotFoundError(f"❌ Error: File not found at {vector_path}")

    with open(vector_path, "r", encoding="utf-8") as f:
        entries = json.load(f)

    if not isinstance(entries, list):
        raise ValueError(f"❌ Error: {vector_path} does not hold a JSON array")

    field = get_field(backend)
    return field.array(str(e) if not isinstance(e, str) else e for e in entries)


def format_vector(values, backend):
    field = get_field(backend)
    return [field.format(v) for v in values]


def format_matrix(rows, backend):
    return [format_vector(row, backend) for row in rows]


def json_float(value, label="value"):
    """A float JSON can carry: non-finite values become the strings nan / inf / -inf."""
    value = float(value)
    if math.isfinite(value):
        return value
    logger.warning(f"⚠️ {label} is not finite ({value!r}), writing it as a string")
    return repr(value)


def save_json(payload, output_path=None):
    text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    if output_path is None:
        sys.stdout.write(text)
        return
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"✅ JSON saved at: {output_path}")


def save_text(text, output_path=None):
    if output_path is None:
        sys.stdout.write(text)
        return
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"✅ Output saved at: {output_path}")
