"""
Result documents emitted by the command-line entry point.

Documents are JSON with sorted keys and a fixed indent so that runs can be
pinned as fixtures and diffed. Exact rationals are rendered as decimal strings
with the document's `precision` digits after the point, rounded half to even.
"""

import json
import logging
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import jsonschema

SCHEMA_VERSION = "1.0"
SCHEMA_PATH = Path(__file__).resolve().parents[2] / "schema" / "result_document.schema.json"
TIMING_KEY = "timing"

logger = logging.getLogger(__name__)


def render_decimal(value: Fraction, precision: int) -> str:
    """Exact rational to a decimal string with `precision` fractional digits."""
    value = Fraction(value)
    integer_digits = len(str(abs(value.numerator) // value.denominator))
    with localcontext() as context:
        context.prec = integer_digits + precision + 20
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
        rendered = quotient.quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)
    if rendered.is_zero():
        rendered = rendered.copy_abs()
    return format(rendered, "f")


def render_vector(values: Iterable[Fraction], precision: int) -> List[str]:
    return [render_decimal(v, precision) for v in values]


def render_exact(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def new_document(command: str, precision: int) -> Dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": command, "precision": precision}


@lru_cache(maxsize=1)
def load_schema() -> Dict[str, Any]:
    with open(SCHEMA_PATH, encoding="utf-8") as f:
        return json.load(f)


def validate_document(document: Dict[str, Any]) -> None:
    """Raises jsonschema.ValidationError if the document does not match the published schema."""
    jsonschema.validate(instance=document, schema=load_schema())


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_document(document: Dict[str, Any], output_path: Optional[Path] = None) -> str:
    """Validate, serialize and write to output_path (or return the text for stdout)."""
    validate_document(document)
    text = dumps(document)
    if output_path is not None:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(text, encoding="utf-8")
        logger.info(f"Result document written to {output_path}")
    return text


def without_timing(document: Dict[str, Any]) -> Dict[str, Any]:
    return {key: value for key, value in document.items() if key != TIMING_KEY}
