"""Small expression vocabulary for trig-polynomial initial data.

A datum is a sum of terms ``a*cos(kx)``, ``b*sin kx`` and constants ``c``.
The coefficient and frequency are optional, so ``"2cos"`` means ``2 cos x``
and ``"0.1sin"`` means ``0.1 sin x``.

Examples:
    >>> parse_series("1 + 0.5*sin(2x)").coeff(0)
    (1+0j)
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fourier import FourierSeries, trig_sum
from .types import ArithmeticMode, ModeLike, coerce_mode

_TERM = re.compile(
    r"""^(?P<sign>[+-]?)
        (?P<coef>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/\d+)?)?
        \*?
        (?:(?P<fn>cos|sin)
           \(?(?P<freq>\d+)?\*?(?P<var>x)?\)?
        )?$""",
    re.VERBOSE,
)
_SPLIT = re.compile(r"(?<![eE*/(])(?=[+-])")


def _coefficient(text: str | None, sign: str, mode: ArithmeticMode) -> Fraction | float:
    value = Fraction(text) if text else Fraction(1)
    if sign == "-":
        value = -value
    return value if mode is ArithmeticMode.RATIONAL else float(value)


def parse_terms(text: str) -> list[tuple[str, int, str]]:
    """Split an expression into ``(kind, freq, signed coefficient text)`` triples."""
    compact = re.sub(r"\s+", "", text.lower())
    if not compact:
        raise ValueError("empty expression")
    terms = []
    for chunk in _SPLIT.split(compact):
        if not chunk:
            continue
        match = _TERM.match(chunk)
        if match is None or (match.group("coef") is None and match.group("fn") is None):
            raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
        kind = match.group("fn") or "const"
        freq = int(match.group("freq")) if match.group("freq") else (1 if kind != "const" else 0)
        terms.append((kind, freq, f"{match.group('sign')}{match.group('coef') or ''}"))
    return terms


def parse_series(text: str, *, mode: ModeLike | None = None) -> FourierSeries:
    """Parse ``text`` into a real :class:`FourierSeries`.

    Rational mode reads decimal literals exactly (``"0.1"`` is ``1/10``).

    Raises:
        ValueError: If a term does not match the vocabulary.
    """
    resolved = coerce_mode(mode)
    parsed = []
    for kind, freq, coef in parse_terms(text):
        sign = "-" if coef.startswith("-") else "+"
        digits = coef.lstrip("+-") or None
        parsed.append((kind, freq, _coefficient(digits, sign, resolved)))
    return trig_sum(parsed, mode=resolved)
