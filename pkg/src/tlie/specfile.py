"""Plain-text algebra descriptions.

A description has five sections; ``#`` starts a comment::

    [meta]
    name = sl_plus_q:2
    variables = q
    signs = eps12=1

    [basis]
    # id grade [display], listed in increasing order
    e12 1 e_{12}
    e13 2 e_{13}
    e23 2 e_{23}

    [sym]
    e12 e13 -> q
    e12 e23 -> q^-1

    [bracket]
    e12 e23 -> e13

    [pseudo]

Table entries are ``x y -> expression`` with x <= y in the basis order.
"""

from __future__ import annotations

import re
from pathlib import Path

from .core import BasisElement, TLieSpec, build_spec
from .errors import ExpressionSyntaxError, SpecFileError, UnknownId
from .expr import Namespace, parse_expression, parse_scalar

SECTIONS = ("meta", "basis", "sym", "bracket", "pseudo")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def loads(text: str) -> TLieSpec:
    sections: dict[str, list[tuple[int, str]]] = {s: [] for s in SECTIONS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            current = m.group(1)
            if current not in sections:
                raise SpecFileError(f"line {lineno}: unknown section [{current}]")
            continue
        if current is None:
            raise SpecFileError(f"line {lineno}: content before the first section")
        sections[current].append((lineno, line))

    meta: dict[str, str] = {}
    notes: dict[str, str] = {}
    for lineno, line in sections["meta"]:
        key, sep, value = line.partition("=")
        if not sep:
            raise SpecFileError(f"line {lineno}: expected key = value in [meta]")
        key, value = key.strip(), value.strip()
        if key.startswith("notes."):
            notes[key[6:]] = value
        else:
            meta[key] = value
    name = meta.get("name", "unnamed")
    variables = tuple(v for v in re.split(r"[,\s]+", meta.get("variables", "")) if v)
    signs: dict[str, int] = {}
    for item in re.split(r"[,\s]+", meta.get("signs", "")):
        if not item:
            continue
        k, sep, v = item.partition("=")
        try:
            signs[k] = int(v)
        except ValueError:
            raise SpecFileError(f"bad sign assignment {item!r}") from None

    basis = []
    for lineno, line in sections["basis"]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise SpecFileError(f"line {lineno}: expected 'id grade [display]'")
        try:
            grade = int(parts[1])
        except ValueError:
            raise SpecFileError(f"line {lineno}: grade {parts[1]!r} is not an integer") from None
        basis.append(BasisElement(parts[0], grade, parts[2] if len(parts) == 3 else ""))

    ns = Namespace(frozenset(b.id for b in basis), variables, signs)
    tables: dict[str, dict] = {"sym": {}, "bracket": {}, "pseudo": {}}
    for table in tables:
        for lineno, line in sections[table]:
            lhs, sep, rhs = line.partition("->")
            keys = lhs.split()
            if not sep or len(keys) != 2:
                raise SpecFileError(f"line {lineno}: expected 'x y -> expression' in [{table}]")
            try:
                if table == "sym":
                    value = parse_scalar(rhs, variables, signs)
                else:
                    value = parse_expression(rhs, ns)
            except (ExpressionSyntaxError, UnknownId) as exc:
                raise SpecFileError(f"line {lineno}: {exc}") from None
            if tuple(keys) in tables[table]:
                raise SpecFileError(f"line {lineno}: duplicate entry for ({keys[0]}, {keys[1]})")
            tables[table][tuple(keys)] = value
    return build_spec(name, basis, tables["sym"], tables["bracket"], tables["pseudo"],
                      variables=variables, signs=signs, notes=notes)


def load(path: str | Path) -> TLieSpec:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(spec: TLieSpec) -> str:
    lines = ["[meta]", f"name = {spec.name}"]
    if spec.variables:
        lines.append("variables = " + ", ".join(spec.variables))
    if spec.signs:
        lines.append("signs = " + ", ".join(f"{k}={v}" for k, v in spec.signs.items()))
    for k, v in spec.notes.items():
        lines.append(f"notes.{k} = {v}")
    lines += ["", "[basis]"]
    for b in spec.basis:
        lines.append(f"{b.id} {b.grade}" + (f" {b.display}" if b.display and " " not in b.display else ""))
    order = lambda key: (spec.index[key[0]], spec.index[key[1]])  # noqa: E731
    lines += ["", "[sym]"]
    for key in sorted(spec.sym, key=order):
        c = spec.sym[key]
        if c != 1:
            lines.append(f"{key[0]} {key[1]} -> {c}")
    for table, values in (("bracket", spec.bracket), ("pseudo", spec.pseudo)):
        lines += ["", f"[{table}]"]
        for key in sorted(values, key=order):
            if values[key]:
                lines.append(f"{key[0]} {key[1]} -> {spec.format(values[key])}")
    return "\n".join(lines) + "\n"


def dump(spec: TLieSpec, path: str | Path) -> None:
    Path(path).write_text(dumps(spec), encoding="utf-8")
