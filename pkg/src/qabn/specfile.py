"""Line-oriented network description files.

Example::

    # three functions on eight qubits
    functions = XNOR:1, NOR:2, NAND:2
    wiring = [6,1,3,2,0,5,4,7]
    input = (0,+)(-+,0)(0-,0)
    steps = 60

Classical nets use ``cvar i = FUNC(j,k)`` lines instead.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .boolfn import format_function, parse_function
from .classical import ClassicalNet
from .errors import DomainError, QabnError, SpecParseError
from .network import NetworkSpec, parse_input_expr

_CVAR = re.compile(r"^cvar\s*(\d+)\s*=\s*([^()]+)\(([^()]*)\)\s*$", re.IGNORECASE)
_KEYS = ("functions", "wiring", "input", "seed", "steps")


@dataclass(frozen=True)
class SpecFile:
    network: NetworkSpec | None = None
    classical: ClassicalNet | None = None
    steps: int | None = None


def _int(value, line, what):
    try:
        v = int(value)
    except ValueError:
        raise SpecParseError(f"{what} must be an integer, got {value!r}", line) from None
    if v < 0:
        raise SpecParseError(f"{what} must be non-negative", line)
    return v


def parse_spec_text(text: str) -> SpecFile:
    fields: dict[str, tuple[str, int]] = {}
    cvars: dict[int, tuple] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _CVAR.match(line)
        if m:
            i = int(m.group(1))
            if i in cvars:
                raise SpecParseError(f"cvar {i} defined twice", lineno)
            try:
                f = parse_function(m.group(2))
            except QabnError as exc:
                raise SpecParseError(str(exc), lineno) from None
            args = m.group(3).strip()
            ins = tuple(_int(a.strip(), lineno, "cvar input") for a in args.split(",")) if args else ()
            cvars[i] = (f, ins, lineno)
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep or key not in _KEYS:
            raise SpecParseError(f"cannot parse {raw.strip()!r}", lineno)
        if key in fields:
            raise SpecParseError(f"{key} given twice", lineno)
        fields[key] = (value.strip(), lineno)

    network = None
    net_keys = [k for k in ("functions", "wiring", "input") if k in fields]
    if net_keys:
        missing = [k for k in ("functions", "wiring", "input") if k not in fields]
        if missing:
            raise SpecParseError(f"network needs {', '.join(missing)}",
                                 fields[net_keys[0]][1])
        network = _network(fields)

    classical = None
    if cvars:
        if sorted(cvars) != list(range(len(cvars))):
            raise SpecParseError(f"cvar indices must be 0..{len(cvars) - 1}",
                                 min(v[2] for v in cvars.values()))
        try:
            classical = ClassicalNet(tuple((cvars[i][0], cvars[i][1]) for i in range(len(cvars))))
        except DomainError as exc:
            raise SpecParseError(str(exc)) from None

    if network is None and classical is None:
        raise SpecParseError("no network or cvar lines found")
    steps = _int(*fields["steps"], "steps") if "steps" in fields else None
    return SpecFile(network, classical, steps)


def _network(fields) -> NetworkSpec:
    ftext, fline = fields["functions"]
    try:
        functions = tuple(parse_function(tok) for tok in ftext.split(",") if tok.strip())
    except SpecParseError as exc:
        raise SpecParseError(str(exc), fline) from None
    if not functions:
        raise SpecParseError("no functions listed", fline)

    wtext, wline = fields["wiring"]
    body = wtext.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise SpecParseError("wiring must look like [i,j,...]", wline)
    wiring = tuple(_int(t.strip(), wline, "wiring entry") for t in body[1:-1].split(",") if t.strip())

    itext, iline = fields["input"]
    try:
        expr = parse_input_expr(itext)
    except SpecParseError as exc:
        raise SpecParseError(str(exc), iline) from None

    seed = _int(*fields["seed"], "seed") if "seed" in fields else None
    try:
        return NetworkSpec(functions, wiring, expr, seed)
    except DomainError as exc:
        raise SpecParseError(str(exc), wline) from None
    except SpecParseError as exc:
        raise SpecParseError(str(exc), iline) from None


def load_spec(path: str | Path) -> SpecFile:
    return parse_spec_text(Path(path).read_text())


def write_spec(spec: SpecFile) -> str:
    lines = []
    net = spec.network
    if net is not None:
        lines.append("functions = " + ", ".join(format_function(f) for f in net.functions))
        lines.append("wiring = [" + ",".join(map(str, net.wiring)) + "]")
        lines.append(f"input = {net.input}")
        if net.seed is not None:
            lines.append(f"seed = {net.seed}")
    if spec.classical is not None:
        lines.extend(spec.classical.describe())
    if spec.steps is not None:
        lines.append(f"steps = {spec.steps}")
    return "\n".join(lines) + "\n"
