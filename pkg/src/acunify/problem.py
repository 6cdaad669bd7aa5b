"""Line-oriented problem files.

Grammar, one item per line::

    theory NAME (free|assoc|comm|ac)
    arity NAME N
    vars NAME...
    mode (unify|match|equal|string-distance|tree-distance)
    alphabet SYMBOL...        (or ``alphabet: SYMBOL...``, read verbatim)
    t1: TERM
    t2: TERM
    s1: SYMBOL...
    s2: SYMBOL...

A line whose first non-blank character is ``#`` is a comment; directive
lines may also end in a ``# comment``.  Payload lines (``t1:`` and friends)
are taken verbatim, since ``#`` is a legal symbol there; the same holds for
``alphabet:`` with a colon.  ``mode`` defaults to
``unify``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .edit import format_vstring
from .errors import TermSyntaxError
from .terms import Signature, Term, Theory, Var, format_term, is_ground, var_counts

MODES = ("unify", "match", "equal", "string-distance", "tree-distance")

__all__ = ["Problem", "ProblemError", "parse_problem", "load_problem", "format_problem"]


class ProblemError(ValueError):
    """Malformed problem file; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1, path: str = "<problem>"):
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {message}")


@dataclass
class Problem:
    signature: Signature
    variables: list[str]
    mode: str = "unify"
    lhs: Term | tuple | None = None
    rhs: Term | tuple | None = None
    alphabet: list[str] | None = None
    options: dict[str, str] = field(default_factory=dict)

    @property
    def is_string(self) -> bool:
        return isinstance(self.lhs, tuple)


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def parse_problem(text: str, path: str = "<problem>") -> Problem:
    sig = Signature()
    variables: list[str] = []
    mode = "unify"
    alphabet = None
    payload: dict[str, tuple[int, int, str]] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        head, sep, rest = stripped.partition(":")
        if sep and head.strip() == "alphabet":
            alphabet = rest.split()
            continue
        if sep and head.strip() in ("t1", "t2", "s1", "s2"):
            key = head.strip()
            if key in payload:
                raise ProblemError(f"duplicate {key}: line", lineno, indent + 1, path)
            col = indent + len(head) + 1 + (len(rest) - len(rest.lstrip())) + 1
            payload[key] = (lineno, col, rest.strip())
            continue
        words = _strip_comment(stripped).split()
        if not words:
            continue
        kw, args = words[0], words[1:]
        try:
            if kw == "theory":
                if len(args) != 2:
                    raise ValueError("expected: theory NAME free|assoc|comm|ac")
                theory = Theory.parse(args[1])
                sig.declare(args[0], 2, theory)
            elif kw == "arity":
                if len(args) != 2 or not args[1].isdigit():
                    raise ValueError("expected: arity NAME N")
                sig.declare(args[0], int(args[1]))
            elif kw == "vars":
                variables.extend(a for a in args if a not in variables)
            elif kw == "mode":
                if len(args) != 1 or args[0] not in MODES:
                    raise ValueError(f"mode must be one of {', '.join(MODES)}")
                mode = args[0]
            elif kw == "alphabet":
                alphabet = list(args)
            else:
                raise ValueError(f"unknown directive {kw!r}")
        except ValueError as exc:
            raise ProblemError(str(exc), lineno, indent + 1, path) from None

    string_mode = "s1" in payload or "s2" in payload
    if string_mode and ("t1" in payload or "t2" in payload):
        raise ProblemError("mix of term (t1/t2) and string (s1/s2) operands", 1, 1, path)
    keys = ("s1", "s2") if string_mode else ("t1", "t2")
    for key in keys:
        if key not in payload:
            raise ProblemError(f"missing {key}: line", len(text.splitlines()) or 1, 1, path)
    if mode == "tree-distance" and string_mode:
        raise ProblemError("tree-distance needs t1/t2 operands", payload["s1"][0], 1, path)
    if mode in ("string-distance",) and not string_mode:
        raise ProblemError("string-distance needs s1/s2 operands", payload["t1"][0], 1, path)

    operands = []
    for key in keys:
        lineno, col, body = payload[key]
        if string_mode:
            varset = set(variables)
            operands.append(tuple(Var(w) if w in varset else w for w in body.split()))
            continue
        try:
            operands.append(sig.parse(body, variables))
        except TermSyntaxError as exc:
            msg = str(exc).rsplit(" (at column", 1)[0]
            raise ProblemError(msg, lineno, col + (exc.pos or 0), path) from None
        except ValueError as exc:
            raise ProblemError(str(exc), lineno, col, path) from None

    problem = Problem(sig, variables, mode, operands[0], operands[1], alphabet)
    if mode == "match" and not string_mode and not is_ground(problem.rhs):
        raise ProblemError("mode match needs a variable-free t2", payload["t2"][0], 1, path)
    return problem


def load_problem(path: str) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), path)


def format_problem(lhs, rhs, *, mode: str = "unify", theories: dict[str, Theory] | None = None,
                   arities: dict[str, int] | None = None, alphabet: Sequence[str] | None = None,
                   comments: Sequence[str] = ()) -> str:
    """Render a problem file that :func:`parse_problem` reads back."""
    lines = [f"# {c}" for c in comments]
    for name, th in sorted((theories or {}).items()):
        lines.append(f"theory {name} {Theory.parse(th).value}")
    for name, n in sorted((arities or {}).items()):
        lines.append(f"arity {name} {n}")
    if isinstance(lhs, tuple):
        names = [x.name for s in (lhs, rhs) for x in s if isinstance(x, Var)]
    else:
        names = [x.name for t in (lhs, rhs) for x in var_counts(t)]
    names = list(dict.fromkeys(names))
    if names:
        lines.append("vars " + " ".join(names))
    lines.append(f"mode {mode}")
    if alphabet:
        lines.append("alphabet: " + " ".join(alphabet))
    if isinstance(lhs, tuple):
        lines.append("s1: " + " ".join(x.name if isinstance(x, Var) else x for x in lhs))
        lines.append("s2: " + " ".join(x.name if isinstance(x, Var) else x for x in rhs))
    else:
        lines.append("t1: " + format_term(lhs))
        lines.append("t2: " + format_term(rhs))
    return "\n".join(lines) + "\n"


def describe_operand(x) -> str:
    return format_vstring(x) if isinstance(x, tuple) else format_term(x)
