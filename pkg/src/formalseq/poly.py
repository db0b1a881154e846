"""Sparse polynomials in t_1..t_n as {exponent tuple: coefficient} dicts."""

from __future__ import annotations

import re
from typing import Dict, Iterable, Tuple

Poly = Dict[Tuple[int, ...], int]


class ParseError(ValueError):
    pass


def const(c: int, n: int) -> Poly:
    return {(0,) * n: c} if c else {}


def var(k: int, n: int) -> Poly:
    e = [0] * n
    e[k] = 1
    return {tuple(e): 1}


def linear(coeffs: Iterable[int]) -> Poly:
    coeffs = list(coeffs)
    n = len(coeffs)
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[k] = 1
            out[tuple(e)] = c
    return out


def add(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for m, c in g.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def scale(f: Poly, c: int) -> Poly:
    return {m: a * c for m, a in f.items()} if c else {}


def mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, a in f.items():
        for m2, b in g.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(m, 0) + a * b
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def power(f: Poly, e: int, n: int) -> Poly:
    out = const(1, n)
    for _ in range(e):
        out = mul(out, f)
    return out


def degree(f: Poly) -> int:
    """Graded degree (each t has degree 2); raises on inhomogeneous input."""
    degs = {2 * sum(m) for m in f}
    if len(degs) > 1:
        raise ValueError(f"polynomial {format_poly(f)} is not homogeneous")
    return degs.pop() if degs else 0


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    terms = []
    for m in sorted(f, reverse=True):
        c = f[m]
        factors = []
        for k, e in enumerate(m):
            if e == 1:
                factors.append(f"t{k + 1}")
            elif e > 1:
                factors.append(f"t{k + 1}^{e}")
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = f"{abs(c)}*" + "*".join(factors)
        terms.append(("-" if c < 0 else "+", body))
    s = "".join(f" {sign} {body}" for sign, body in terms).strip()
    if s.startswith("+ "):
        s = s[2:]
    elif s.startswith("- "):
        s = "-" + s[2:]
    return s


_TERM_RE = re.compile(r"^(\d+)?((?:\*?t\d+(?:\^\d+)?)*)$")
_FACTOR_RE = re.compile(r"t(\d+)(?:\^(\d+))?")


def parse_poly(text: str, n: int) -> Poly:
    """Parse the canonical sparse encoding, e.g. ``"2*t1^2*t2 - t2^3 + 5"``."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    out: Poly = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ParseError(f"cannot parse term {body!r} in {text!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if not m.group(1) and not m.group(2):
            raise ParseError(f"cannot parse term {body!r}")
        exps = [0] * n
        for idx, e in _FACTOR_RE.findall(m.group(2) or ""):
            k = int(idx) - 1
            if not 0 <= k < n:
                raise ParseError(f"variable t{idx} out of range for n={n}")
            exps[k] += int(e) if e else 1
        out = add(out, {tuple(exps): -coef if sign == "-" else coef})
    if "".join(re.findall(r"[+-][^+-]+", s)) != s:
        raise ParseError(f"cannot parse {text!r}")
    return out
