"""Parser for module expressions such as ``hw(tensor(fund(1),fund(1)),2)``.

Grammar::

    rep    := "fund(" int ")"
            | "tensor(" rep "," rep { "," rep } ")"
            | "power(" int "," int ")"            # V(varpi_1)^{(x) m} of rank n
            | "hw(" rep "," int { "," int } ")"   # highest weight coordinates
            | "irr(" int "," int { "," int } ")"  # V(lam) of rank n
"""
from __future__ import annotations

import re

from .module import Rep, fundamental_rep, highest_weight_submodule, irreducible, tensor_power, tensor_rep

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym.strip():
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind, value=None):
        k, v = self.peek()
        if k != kind or (value is not None and v != value):
            raise ValueError(f"expected {value or kind} at token {self.i}, got {v!r}")
        self.i += 1
        return v

    def ints(self):
        vals = [self.signed()]
        while self.peek() == ("sym", ","):
            self.take("sym", ",")
            vals.append(self.signed())
        return vals

    def signed(self):
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take("sym", "-")
            sign = -1
        return sign * self.take("int")

    def rep(self) -> Rep:
        name = self.take("name")
        self.take("sym", "(")
        if name == "fund":
            out = fundamental_rep(self.take("int"))
        elif name == "tensor":
            out = self.rep()
            while self.peek() == ("sym", ","):
                self.take("sym", ",")
                out = tensor_rep(out, self.rep())
        elif name == "power":
            n = self.take("int")
            self.take("sym", ",")
            out = tensor_power(n, self.take("int"))
        elif name == "hw":
            base = self.rep()
            self.take("sym", ",")
            lam = self.ints()
            if len(lam) != base.n:
                raise ValueError(f"weight {lam} has wrong rank for n={base.n}")
            out = highest_weight_submodule(base, lam)
        elif name == "irr":
            n = self.take("int")
            self.take("sym", ",")
            lam = self.ints()
            if len(lam) != n:
                raise ValueError(f"weight {lam} has wrong rank for n={n}")
            out = irreducible(n, lam)
        else:
            raise ValueError(f"unknown module constructor {name!r}")
        self.take("sym", ")")
        return out


def parse_rep(text: str) -> Rep:
    """Build a module from an expression.

    >>> parse_rep("hw(tensor(fund(1),fund(1)),2)").dim
    3
    """
    p = _Parser(text)
    rep = p.rep()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    return rep
