"""Polynomial expression grammar shared by the library and the job-file reader.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' | '/') factor)*     (divisors must be nonzero constants)
    factor := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Coefficients are integers or, through division by constants, rationals;
variables must be declared.  The result is a
``{exponent_tuple: coefficient}`` dict with zero coefficients removed.
"""
from __future__ import annotations

import re
from fractions import Fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ExpressionError(ValueError):
    """Malformed polynomial expression; ``column`` is 1-based within the text."""

    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column} in {text!r}")
        self.text = text
        self.column = column


def _tokenize(text):
    pos = 0
    out = []
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionError("unexpected character", text, col)
        start = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


def _add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + sign * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            nv = out.get(k, 0) + va * vb
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def parse_polynomial(text: str, variables) -> dict[tuple[int, ...], int]:
    """Parse ``text`` into exact coefficients over ``variables``."""
    variables = list(variables)
    nv = len(variables)
    where = {v: i for i, v in enumerate(variables)}
    toks = _tokenize(text)
    pos = 0
    one = (0,) * nv

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
        acc = _add({}, term(), sign)
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            acc = _add(acc, term(), -1 if op == "-" else 1)
        return acc

    def term():
        acc = factor()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()
            rhs = factor()
            if op[1] == "*":
                acc = _mul(acc, rhs)
                continue
            if set(rhs) - {one} or not rhs:
                raise ExpressionError("can only divide by a nonzero constant", text, op[2])
            d = rhs[one]
            acc = {k: Fraction(v) / d for k, v in acc.items()}
        return acc

    def factor():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            t = take()
            if t[0] != "int":
                raise ExpressionError("expected integer exponent", text, t[2])
            out = {one: 1}
            for _ in range(t[1]):
                out = _mul(out, base)
            return out
        return base

    def atom():
        t = take()
        kind, val, col = t
        if kind == "int":
            return {one: val} if val else {}
        if kind == "name":
            if val not in where:
                raise ExpressionError(f"undeclared variable {val!r}", text, col)
            e = [0] * nv
            e[where[val]] = 1
            return {tuple(e): 1}
        if kind == "op" and val == "(":
            inner = expr()
            close = take()
            if close[0] != "op" or close[1] != ")":
                raise ExpressionError("expected ')'", text, close[2])
            return inner
        if kind == "end":
            raise ExpressionError("unexpected end of expression", text, col)
        raise ExpressionError(f"unexpected {val!r}", text, col)

    result = expr()
    t = peek()
    if t[0] != "end":
        raise ExpressionError(f"unexpected {t[1]!r}", text, t[2])
    return result


def format_polynomial(terms: dict, variables, signed=lambda c: c) -> str:
    """Render terms in degree-descending, lex-descending order; ``0`` if empty."""
    if not terms:
        return "0"
    keys = sorted(terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
    parts = []
    for e in keys:
        c = signed(terms[e])
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if isinstance(a, Fraction) and a.denominator == 1:
            a = a.numerator
        if mono:
            if isinstance(a, Fraction):
                num = "" if a.numerator == 1 else f"{a.numerator}*"
                body = f"{num}{mono}/{a.denominator}"
            else:
                body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
