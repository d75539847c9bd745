"""Parser for algebra expressions such as ``star(u(2,1)) + t^-1*u12``.

Grammar::

    expr   := ["-"] term { ("+" | "-") term }
    term   := factor { ("*" | "/") factor }      # "/" only by scalars
    factor := atom [ "^" ["-"] int ]            # negative powers only for scalars
    atom   := "u(" int "," int ")" | "u" digit digit | "t" | int
            | "star(" expr ")" | "S(" expr ")" | "qdet(" int ")" | "(" expr ")"

``qdet(n)`` is the unreduced quantum determinant sum, which normalizes to 1.
"""
from __future__ import annotations

import re

from .frt import FnAlgElem, FRTAlgebra

_TOK = re.compile(r"\s*(?:(\d+)|(u\d\d)|([A-Za-z_]+)|(\S))")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            break
        if m.end() == pos:
            break
        num, ushort, name, sym = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif ushort is not None:
            out.append(("ushort", (int(ushort[1]), int(ushort[2]))))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None:
            out.append(("sym", sym))
        pos = m.end()
    return out


class _P:
    def __init__(self, alg: FRTAlgebra, text: str):
        self.alg = alg
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind, value=None):
        k, v = self.peek()
        if k != kind or (value is not None and v != value):
            raise ValueError(f"parse error at token {self.i}: expected {value or kind}, got {v!r}")
        self.i += 1
        return v

    def is_sym(self, s):
        return self.peek() == ("sym", s)

    def expr(self) -> FnAlgElem:
        neg = False
        if self.is_sym("-"):
            self.take("sym", "-")
            neg = True
        out = self.term()
        if neg:
            out = -out
        while self.is_sym("+") or self.is_sym("-"):
            op = self.take("sym")
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> FnAlgElem:
        out = self.factor()
        while self.is_sym("*") or self.is_sym("/"):
            op = self.take("sym")
            f = self.factor()
            if op == "*":
                out = out * f
            else:
                c = _as_scalar(f)
                if c is None:
                    raise ValueError("division is only allowed by scalars")
                out = out.scale(1 / c)
        return out

    def factor(self) -> FnAlgElem:
        base = self.atom()
        if self.is_sym("^"):
            self.take("sym", "^")
            sign = 1
            if self.is_sym("-"):
                self.take("sym", "-")
                sign = -1
            k = self.take("int") * sign
            if k < 0:
                c = _as_scalar(base)
                if c is None:
                    raise ValueError("negative powers are only allowed for scalars")
                return self.alg.scalar(c ** k)
            return base ** k
        return base

    def atom(self) -> FnAlgElem:
        k, v = self.peek()
        alg = self.alg
        if k == "int":
            self.take("int")
            return alg.scalar(v)
        if k == "ushort":
            self.take("ushort")
            return alg.u(*v)
        if k == "sym" and v == "(":
            self.take("sym", "(")
            e = self.expr()
            self.take("sym", ")")
            return e
        if k == "sym" and v == "-":
            self.take("sym", "-")
            return -self.factor()
        if k == "name":
            self.take("name")
            if v == "t":
                return alg.scalar(alg.t)
            if v == "u":
                self.take("sym", "(")
                i = self.take("int")
                self.take("sym", ",")
                j = self.take("int")
                self.take("sym", ")")
                return alg.u(i, j)
            if v in ("star", "S"):
                self.take("sym", "(")
                e = self.expr()
                self.take("sym", ")")
                return alg.star(e) if v == "star" else alg.antipode(e)
            if v == "qdet":
                self.take("sym", "(")
                n = self.take("int")
                self.take("sym", ")")
                if n != alg.n:
                    raise ValueError(f"qdet({n}) used in an algebra of rank {alg.n}")
                return FnAlgElem(alg, alg.reduce_det(dict(alg.det_terms())))
        raise ValueError(f"parse error at token {self.i}: unexpected {v!r}")


def _as_scalar(x: FnAlgElem):
    if not x.terms:
        return 0
    if list(x.terms) == [()]:
        return x.terms[()]
    return None


def parse_element(alg: FRTAlgebra, text: str) -> FnAlgElem:
    """Parse an expression into a normal-ordered element of ``alg``.

    >>> from qcrystal.fnalg.frt import FRTAlgebra
    >>> str(parse_element(FRTAlgebra(1), "u22*u11"))
    '1 + t^-1*u12*u21'
    """
    p = _P(alg, text)
    out = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input at token {p.i}")
    return out
