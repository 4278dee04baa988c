"""Ground terms as nested tuples: ``(symbol name, (child, ...))``.

The textual grammar is ``name`` or ``name(t,...,t)``, whitespace
insensitive; nullary symbols may be written with or without ``()``.
"""

from __future__ import annotations

#: Term = tuple[str, tuple[Term, ...]]
Term = tuple


def term(name: str, *children: Term) -> Term:
    return (name, tuple(children))


def term_height(t: Term) -> int:
    """Height counted in nodes: a single leaf has height 1."""
    name, children = t
    return 1 + max((term_height(c) for c in children), default=0)


def format_term(t: Term) -> str:
    name, children = t
    if not children:
        return name
    return f"{name}({','.join(format_term(c) for c in children)})"


def parse_term(text: str) -> Term:
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def name_token() -> str:
        nonlocal pos
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] in "_'"):
            pos += 1
        if pos == start:
            raise ValueError(f"expected a symbol name at position {start}: {text!r}")
        return text[start:pos]

    def node() -> Term:
        nonlocal pos
        skip_ws()
        name = name_token()
        skip_ws()
        if pos < len(text) and text[pos] == "(":
            pos += 1
            skip_ws()
            children = []
            if pos < len(text) and text[pos] == ")":
                pos += 1
                return (name, ())
            while True:
                children.append(node())
                skip_ws()
                if pos >= len(text):
                    raise ValueError(f"unterminated term: {text!r}")
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == ")":
                    pos += 1
                    return (name, tuple(children))
                raise ValueError(f"unexpected {text[pos]!r} at position {pos}: {text!r}")
        return (name, ())

    result = node()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos}: {text!r}")
    return result
