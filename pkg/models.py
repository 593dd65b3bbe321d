# models.py
# Interchange types shared by the CLI and the HTTP API:
# StateSpec (what comes in) and ReportRecord (what goes out).

import json
import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from config import Config
from engine.exceptions import DomainError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateSpec:
    """Two-qubit amplitudes (c00, c01, c10, c11) plus the optional normalize flag."""

    amplitudes: Tuple[complex, complex, complex, complex]
    normalize: bool = False

    @classmethod
    def from_document(cls, document: Any) -> "StateSpec":
        """Builds a spec from {"amplitudes": [[re, im] x4], "normalize": bool}."""
        if not isinstance(document, dict):
            raise ParseError("State spec must be an object with an 'amplitudes' field")
        if "amplitudes" not in document:
            raise ParseError("State spec is missing the 'amplitudes' field")

        pairs = document["amplitudes"]
        if not isinstance(pairs, list) or len(pairs) != 4:
            raise ParseError("'amplitudes' must be a list of 4 [re, im] pairs")

        amplitudes = []
        for index, pair in enumerate(pairs):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"Amplitude {index} must be a [re, im] pair")
            re, im = (_real(value, f"amplitude {index}") for value in pair)
            amplitudes.append(complex(re, im))

        normalize = document.get("normalize", False)
        if not isinstance(normalize, bool):
            raise ParseError("'normalize' must be true or false")

        return cls(tuple(amplitudes), normalize)

    @classmethod
    def from_text(cls, text: str) -> "StateSpec":
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"State spec is not valid JSON: {e}") from e
        return cls.from_document(document)

    @classmethod
    def from_file(cls, path: str) -> "StateSpec":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            raise ParseError(f"Cannot read state spec '{path}': {e}") from e
        return cls.from_text(text)

    @classmethod
    def from_inline(cls, text: str, normalize: bool = False) -> "StateSpec":
        """8 comma-separated reals: re00,im00,re01,im01,re10,im10,re11,im11."""
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 8:
            raise ParseError(f"Inline amplitudes need 8 comma-separated reals, got {len(parts)}")
        try:
            values = [float(part) for part in parts]
        except ValueError as e:
            raise ParseError(f"Inline amplitudes must be real numbers: {e}") from e
        if not all(math.isfinite(v) for v in values):
            raise ParseError("Inline amplitudes must be finite")
        amplitudes = tuple(complex(values[i], values[i + 1]) for i in range(0, 8, 2))
        return cls(amplitudes, normalize)

    def with_normalize(self, normalize: bool) -> "StateSpec":
        return StateSpec(self.amplitudes, self.normalize or normalize)

    def norm_squared(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.amplitudes))

    def resolved(self) -> np.ndarray:
        """Amplitudes as a complex array, normalized when the flag is set."""
        vector = np.array(self.amplitudes, dtype=complex)
        norm_squared = self.norm_squared()
        if norm_squared == 0.0:
            raise DomainError("State spec has no nonzero amplitude")
        if self.normalize:
            vector = vector / math.sqrt(norm_squared)
        return vector

    def require_normalized(self) -> np.ndarray:
        """resolved(), but unnormalized amplitudes are an error rather than a silent rescale."""
        vector = self.resolved()
        deviation = abs(float(np.vdot(vector, vector).real) - 1.0)
        if deviation >= Config.NORMALIZATION_TOLERANCE:
            raise DomainError(
                f"State is not normalized (|norm^2 - 1| = {deviation:.3e}); pass --normalize to rescale"
            )
        return vector

    def echo(self) -> Dict[str, Any]:
        return {
            "amplitudes": [[c.real, c.imag] for c in self.amplitudes],
            "normalize": self.normalize,
        }


def _real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ParseError(f"{where}: value must be finite")
    return value


def round_significant(value: float, digits: Optional[int] = None) -> float:
    digits = Config.SIGNIFICANT_DIGITS if digits is None else digits
    # + 0.0 folds -0.0 into 0.0
    return float(f"{value:.{digits}g}") + 0.0


def _clean(value: Any, path: str) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise DomainError(f"Report field '{path}' is not finite")
        return round_significant(float(value))
    if isinstance(value, np.ndarray):
        return _clean(value.tolist(), path)
    if isinstance(value, dict):
        return {key: _clean(item, f"{path}.{key}") for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item, f"{path}[{i}]") for i, item in enumerate(value)]
    raise TypeError(f"Unsupported report value at '{path}': {type(value).__name__}")


@dataclass
class ReportRecord:
    """Result of one command: input echo, computed fields, optional oracle residuals."""

    command: str
    inputs: Dict[str, Any]
    fields: Dict[str, Any]
    residuals: Optional[Dict[str, Any]] = field(default=None)

    def to_dict(self) -> Dict[str, Any]:
        report = {
            "command": self.command,
            "inputs": _clean(self.inputs, "inputs"),
            "fields": _clean(self.fields, "fields"),
        }
        if self.residuals is not None:
            report["residuals"] = _clean(self.residuals, "residuals")
        return report
