"""Named example networks.

Where the running text and a figure caption describe the same experiment
with different wirings or inputs, both versions ship under ``*_text`` and
``*_caption`` names.
"""
from __future__ import annotations

from .errors import DomainError
from .specfile import SpecFile, parse_spec_text

PRESET_TEXT = {
    "or_cycle": """
        functions = OR:2
        wiring = [0,1,2]
        input = (11,0)
    """,
    "fig5_text": """
        functions = XNOR:1, NOR:2
        wiring = [0,3,2,1,4]
        input = (+,+)(10,0)
    """,
    "fig5_caption": """
        functions = XNOR:1, NOR:2
        wiring = [2,1,0,4,3]
        input = (+,1)(1-,0)
    """,
    "fig6": """
        functions = XNOR:1, NOR:2
        wiring = [4,1,0,3,2]
        input = (-,+)(+0,0)
    """,
    "fig7": """
        functions = XNOR:1, NOR:2, NAND:2
        wiring = [6,1,3,2,0,5,4,7]
        input = (0,+)(-+,0)(0-,0)
    """,
    "fig9_text": """
        functions = XNOR:1, NOR:2, NAND:2
        wiring = [6,5,7,4,0,3,1,2]
        input = (-,+)(-0,0)(1+,0)
    """,
    # the caption's input groups are (2,2,1) inputs wide, so the
    # single-input function moves last
    "fig9_caption": """
        functions = NOR:2, NAND:2, XNOR:1
        wiring = [6,3,1,4,5,7,2,0]
        input = (-+,0)(-+,0)(-,1)
    """,
    "fig1_classical": """
        cvar 0 = AND(1,2)
        cvar 1 = OR(0,2)
        cvar 2 = OR(0,1)
    """,
}

PRESET_NAMES = tuple(PRESET_TEXT)


def preset(name: str) -> SpecFile:
    try:
        text = PRESET_TEXT[name]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
    return parse_spec_text(text)


def all_presets() -> dict[str, SpecFile]:
    return {name: preset(name) for name in PRESET_NAMES}
