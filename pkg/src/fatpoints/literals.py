"""Text literals for schemes and divisor classes.

Scheme: ``"3,2,1,1"`` with exponent shorthand ``"9^7"`` or
``"15^4,13^2,9,2^4"``.  Class: ``"d; m1,m2,..."`` e.g.
``"34; 14^4,12^2,8,2^4"``; the multiplicity list may be empty (``"1;"``).
Rendering is canonical: runs of equal values collapse to ``v^e`` for e >= 2,
so parse(render(x)) == x and render(parse(s)) is a normal form.
"""

from __future__ import annotations

import re

from .divisor import DivisorClass
from .scheme import FatPointScheme

_ITEM = re.compile(r"^(-?\d+)(?:\^(\d+))?$")


class LiteralError(ValueError):
    pass


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    out: list[int] = []
    for part in text.split(","):
        m = _ITEM.match(part.strip())
        if not m:
            raise LiteralError(f"malformed {what} literal: {part!r}")
        value = int(m.group(1))
        count = int(m.group(2)) if m.group(2) else 1
        if count < 1:
            raise LiteralError(f"exponent must be >= 1 in {part!r}")
        out.extend([value] * count)
    return tuple(out)


def _render_int_list(values: tuple[int, ...]) -> str:
    parts: list[str] = []
    i = 0
    while i < len(values):
        j = i
        while j < len(values) and values[j] == values[i]:
            j += 1
        run = j - i
        parts.append(f"{values[i]}^{run}" if run >= 2 else str(values[i]))
        i = j
    return ",".join(parts)


def parse_scheme(text: str) -> FatPointScheme:
    return FatPointScheme(_parse_int_list(text, "scheme"))


def render_scheme(z: FatPointScheme) -> str:
    return _render_int_list(z.mult)


def parse_class(text: str) -> DivisorClass:
    if ";" not in text:
        raise LiteralError(f"class literal needs 'd; m1,...': {text!r}")
    head, _, tail = text.partition(";")
    head = head.strip()
    if not re.match(r"^-?\d+$", head):
        raise LiteralError(f"malformed degree in class literal: {head!r}")
    return DivisorClass(int(head), _parse_int_list(tail, "class"))


def render_class(c: DivisorClass) -> str:
    return f"{c.d}; {_render_int_list(c.mult)}"
