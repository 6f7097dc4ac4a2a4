"""JSON input documents and the built-in example generators.

Document layout (indices are 1-based; ``index_base`` is optional but, when
present, must be 1)::

    {
      "index_base": 1,
      "dimension": 3,
      "brackets": [{"i": 1, "j": 3, "k": 1, "c": 0.9624236501192069}, ...],
      "leaf": [1],
      "tolerance": 1e-9,
      "names": ["e1", "e2", "e3"]
    }

Each bracket record means ``c[i][j][k] = c``; the mirror ``c[j][i][k] = -c``
is implied.  Records with ``i > j`` are folded onto ``(j, i, k, -c)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DuplicateBracket, InvalidParameter, ParseError, SchemaError
from .lie_frame import LieFrameAlgebra
from .transverse import FoliationSpec

EXAMPLES = ("carriere", "hrw7", "heisenberg")


@dataclass
class InputDocument:
    dimension: int
    brackets: list[tuple[int, int, int, float]]
    leaf: list[int]
    tolerance: float | None = None
    names: list[str] | None = None

    def to_algebra(self) -> LieFrameAlgebra:
        entries = [(i - 1, j - 1, k - 1, c) for i, j, k, c in self.brackets]
        return LieFrameAlgebra.from_brackets(self.dimension, entries, self.names)

    def to_foliation(self) -> FoliationSpec:
        return FoliationSpec.from_leaf([i - 1 for i in self.leaf], self.dimension)

    def to_dict(self) -> dict:
        out = {
            "index_base": 1,
            "dimension": self.dimension,
            "brackets": [{"i": i, "j": j, "k": k, "c": c} for i, j, k, c in self.brackets],
            "leaf": list(self.leaf),
        }
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        if self.names is not None:
            out["names"] = list(self.names)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_algebra(cls, alg: LieFrameAlgebra, fol: FoliationSpec, tolerance=None) -> "InputDocument":
        brackets = [(i + 1, j + 1, k + 1, c) for i, j, k, c in alg.nonzero_brackets()]
        names = None if alg.frame_names is None else list(alg.frame_names)
        return cls(alg.dimension, brackets, [a + 1 for a in fol.leaf], tolerance, names)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_real(x) -> bool:
    return (isinstance(x, (int, float)) and not isinstance(x, bool)) and math.isfinite(x)


def parse_input(text: str) -> InputDocument:
    """Parse and schema-check a document.

    Raises :class:`ParseError` for malformed JSON (with line/column),
    :class:`SchemaError` for missing or out-of-range fields and
    :class:`DuplicateBracket` for repeated ``(i, j, k)`` triples.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from exc
    if not isinstance(raw, dict):
        raise SchemaError("document must be a JSON object", field="$")

    def require(name):
        if name not in raw:
            raise SchemaError(f"missing field '{name}'", field=name)
        return raw[name]

    if "index_base" in raw and raw["index_base"] != 1:
        raise SchemaError("index_base must be 1", field="index_base")

    n = require("dimension")
    if not _is_int(n) or n < 1:
        raise SchemaError("dimension must be a positive integer", field="dimension")

    def index(value, where):
        if not _is_int(value) or not 1 <= value <= n:
            raise SchemaError(f"{where} must be an integer in [1, {n}]", field=where)
        return value

    records = require("brackets")
    if not isinstance(records, list):
        raise SchemaError("brackets must be a list", field="brackets")
    brackets, seen = [], {}
    for pos, rec in enumerate(records):
        where = f"brackets[{pos}]"
        if not isinstance(rec, dict):
            raise SchemaError(f"{where} must be an object", field=where)
        for key in ("i", "j", "k", "c"):
            if key not in rec:
                raise SchemaError(f"missing field '{where}.{key}'", field=f"{where}.{key}")
        i, j, k = (index(rec[key], f"{where}.{key}") for key in ("i", "j", "k"))
        c = rec["c"]
        if not _is_real(c):
            raise SchemaError(f"{where}.c must be a finite number", field=f"{where}.c")
        if i == j:
            raise SchemaError(f"{where}: i and j must differ", field=where)
        if i > j:
            i, j, c = j, i, -c
        if (i, j, k) in seen:
            raise DuplicateBracket(f"{where} repeats bracket ({i}, {j}, {k}) from brackets[{seen[(i, j, k)]}]",
                                   field=where, index=[i, j, k])
        seen[(i, j, k)] = pos
        brackets.append((i, j, k, float(c)))

    leaf = require("leaf")
    if not isinstance(leaf, list) or not leaf:
        raise SchemaError("leaf must be a nonempty list of indices", field="leaf")
    leaf = [index(a, f"leaf[{pos}]") for pos, a in enumerate(leaf)]
    if len(set(leaf)) != len(leaf):
        raise SchemaError("leaf indices must be distinct", field="leaf")
    if len(leaf) >= n:
        raise SchemaError("leaf must be a proper subset of the frame", field="leaf")

    tol = raw.get("tolerance")
    if tol is not None and (not _is_real(tol) or tol <= 0):
        raise SchemaError("tolerance must be a positive number", field="tolerance")

    names = raw.get("names")
    if names is not None:
        if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
            raise SchemaError(f"names must be a list of {n} strings", field="names")

    return InputDocument(n, brackets, leaf, None if tol is None else float(tol), names)


def carriere(trace: int = 3) -> InputDocument:
    """Mapping torus of a hyperbolic matrix in SL(2, Z) with the given trace.

    ``rho = (t + sqrt(t^2 - 4)) / 2``; ``[e1, e3] = log(rho) e1``,
    ``[e2, e3] = -log(rho) e2``; leaves along ``e1``.
    """
    if not _is_int(trace) or trace < 3:
        raise InvalidParameter(f"trace must be an integer >= 3, got {trace!r}")
    rho = (trace + math.sqrt(trace * trace - 4)) / 2
    lr = math.log(rho)
    return InputDocument(3, [(1, 3, 1, lr), (2, 3, 2, -lr)], [1])


def hrw7(coshk: float = 1.5, n1: float = 1.0, n2: float = 1.0) -> InputDocument:
    """7-dimensional solvable example with codimension-3 transverse Einstein foliation."""
    if not _is_real(coshk) or coshk < 1.5 or abs(2 * coshk - round(2 * coshk)) > 1e-12:
        raise InvalidParameter(f"2*cosh(k) must be an integer >= 3, got coshk={coshk!r}")
    for name, value in (("n1", n1), ("n2", n2)):
        if not _is_real(value) or value == 0:
            raise InvalidParameter(f"{name} must be a nonzero real, got {value!r}")
    k = math.acosh(coshk)
    brackets = [
        (1, 2, 3, float(n1)),
        (1, 7, 1, -k),
        (2, 7, 2, k),
        (4, 5, 6, float(n2)),
        (4, 7, 4, -k),
        (5, 7, 5, k),
    ]
    return InputDocument(7, brackets, [1, 3, 4, 6])


def heisenberg() -> InputDocument:
    """Heisenberg algebra ``[e1, e2] = e3`` foliated by its center; the taut control."""
    return InputDocument(3, [(1, 2, 3, 1.0)], [3])


def generate_example(name: str, **params) -> InputDocument:
    makers = {"carriere": carriere, "hrw7": hrw7, "heisenberg": heisenberg}
    if name not in makers:
        raise InvalidParameter(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    try:
        return makers[name](**params)
    except TypeError as exc:
        raise InvalidParameter(str(exc)) from exc
