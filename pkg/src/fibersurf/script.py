"""Construction scripts: a line-oriented language for building fibered surfaces.

One operation per line, ``#`` starts a comment::

    ruled
    mark q1 q2 q3 q4
    make_nonreduced q1
    elem_transform q1 E2
    blowup_curve q1 E3
    blowup_edge q1 E3 E4
    contract q1 E4

Identifiers are resolved when the script is replayed, not when it is parsed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import birational, singularities
from .curves import SurfaceModel
from .errors import FiberSurfError

# keyword -> (min args, max args or None)
ARITY = {
    "ruled": (0, 0),
    "mark": (1, None),
    "make_nonreduced": (1, 1),
    "elem_transform": (2, 2),
    "blowup_curve": (2, 2),
    "blowup_edge": (3, 3),
    "contract": (2, None),
}
_IDENT = re.compile(r"^[A-Za-z0-9_.'+-]+$")


class ScriptError(FiberSurfError):
    """A parse or replay error, located at a script line (1-based)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Op:
    kind: str
    args: tuple[str, ...] = ()
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        return " ".join((self.kind,) + self.args)


@dataclass(frozen=True)
class ConstructionScript:
    ops: tuple[Op, ...] = ()

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def marked_points(self) -> tuple[str, ...]:
        return tuple(q for op in self.ops if op.kind == "mark" for q in op.args)

    def render(self) -> str:
        return "".join(op.render() + "\n" for op in self.ops)

    def extended(self, *ops: Op) -> "ConstructionScript":
        return ConstructionScript(self.ops + tuple(ops))

    def prefix(self, n: int) -> "ConstructionScript":
        return ConstructionScript(self.ops[:n])


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    for m in re.finditer(r"\S+", text):
        out.append((m.group(0), m.start() + 1))
    return out


def parse_script(text: str) -> ConstructionScript:
    ops: list[Op] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = _tokens(body)
        if not tokens:
            continue
        (word, col), rest = tokens[0], tokens[1:]
        kind = word.lower()
        if kind not in ARITY:
            raise ScriptError(f"unknown operation {word!r}", lineno, col)
        lo, hi = ARITY[kind]
        if len(rest) < lo or (hi is not None and len(rest) > hi):
            want = f"{lo}" if lo == hi else f"at least {lo}" if hi is None else f"{lo}-{hi}"
            if hi is not None and len(rest) > hi:
                bad_col = rest[hi][1]
            else:
                last, last_col = (rest or [(word, col)])[-1]
                bad_col = last_col + len(last)
            raise ScriptError(f"{kind} takes {want} argument(s), got {len(rest)}", lineno, bad_col)
        for tok, tcol in rest:
            if not _IDENT.match(tok):
                raise ScriptError(f"invalid identifier {tok!r}", lineno, tcol)
        if kind == "ruled" and ops:
            raise ScriptError("'ruled' must be the first operation and appear once", lineno, col)
        if kind != "ruled" and not ops:
            raise ScriptError("script must start with 'ruled'", lineno, col)
        ops.append(Op(kind, tuple(t for t, _ in rest), lineno))
    if not ops:
        raise ScriptError("empty script: expected 'ruled'", 1, 1)
    return ConstructionScript(tuple(ops))


def render_script(script: ConstructionScript) -> str:
    return script.render()


def apply_op(model: SurfaceModel | None, op: Op) -> SurfaceModel:
    if op.kind == "ruled":
        return SurfaceModel.ruled()
    assert model is not None
    a = op.args
    if op.kind == "mark":
        return model.with_marked(a)
    if op.kind == "make_nonreduced":
        return birational.make_nonreduced(model, a[0])
    if op.kind == "elem_transform":
        return birational.elementary_transform(model, a[0], a[1])
    if op.kind == "blowup_curve":
        return birational.blow_up_model(model, a[0], a[1])
    if op.kind == "blowup_edge":
        return birational.blow_up_model(model, a[0], a[1], a[2])
    if op.kind == "contract":
        return singularities.contract_ade(model, a[0], a[1:])
    raise ScriptError(f"unknown operation {op.kind!r}", op.line)


def run_script(script: ConstructionScript) -> SurfaceModel:
    """Replay ``script`` from the ruled surface; errors carry the offending line."""
    model = None
    for op in script.ops:
        try:
            model = apply_op(model, op)
        except ScriptError:
            raise
        except (FiberSurfError, ValueError) as exc:
            raise ScriptError(f"{op.render()}: {exc}", op.line) from exc
    if model is None:
        raise ScriptError("empty script")
    return model


EXAMPLE_SCRIPT = """\
# Four A1A1 fibers over four marked points.
ruled
mark q1 q2 q3 q4
make_nonreduced q1
make_nonreduced q2
make_nonreduced q3
make_nonreduced q4
"""
