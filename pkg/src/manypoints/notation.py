"""Reading and writing curve, place and divisor text in ideal-generator notation.

Examples of accepted input::

    y^2 + (x^2 + x + 1)y + x^5 + x^4 + x^2 + x
    (x + 1, y + x + 1)      (1/z, 1/z^3y + 1)      (x^3 + x + 1)
    (x^2 + x + 1, y + x + 1) + 3(x^2 + x + 1, y + x^2 + x)

Over F_4 the constant ``a`` satisfies a^2 = a + 1.
"""

import re

from .algebra import poly as P
from .algebra.fields import GF
from . import curve as cv


class ParseError(ValueError):
    pass


class AmbiguousPlace(ValueError):
    pass


class UnknownPlace(ValueError):
    pass


BASE_VARS = ("x", "z")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z](?:_?\d+)?)|(\S))")


def _tokenize(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, ident, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


class Expr:
    """Polynomial in named variables over F_q divided by a polynomial in the base variable.

    ``terms`` maps sorted tuples of (variable, exponent) pairs to coefficients.
    """

    __slots__ = ("F", "base", "terms", "den")

    def __init__(self, F, base, terms, den=P.ONE):
        self.F, self.base = F, base
        self.terms = {k: c for k, c in terms.items() if c}
        self.den = den

    @classmethod
    def const(cls, F, base, c):
        return cls(F, base, {(): c})

    @classmethod
    def var(cls, F, base, name):
        return cls(F, base, {((name, 1),): 1})

    def _mul_terms(self, t1, t2):
        A, M = self.F.add_table, self.F.mul_table
        out = {}
        for k1, c1 in t1.items():
            for k2, c2 in t2.items():
                d = dict(k1)
                for v, e in k2:
                    d[v] = d.get(v, 0) + e
                k = tuple(sorted(d.items()))
                out[k] = A[out.get(k, 0)][M[c1][c2]]
        return out

    def _add_terms(self, t1, t2):
        A = self.F.add_table
        out = dict(t1)
        for k, c in t2.items():
            out[k] = A[out.get(k, 0)][c]
        return out

    def _poly_terms(self, poly):
        return {((self.base, i),) if i else (): c for i, c in enumerate(poly) if c}

    def __add__(self, o):
        t1 = self._mul_terms(self.terms, self._poly_terms(o.den))
        t2 = self._mul_terms(o.terms, self._poly_terms(self.den))
        return Expr(self.F, self.base, self._add_terms(t1, t2), P.mul(self.F, self.den, o.den))

    def __neg__(self):
        N = self.F.neg_table
        return Expr(self.F, self.base, {k: N[c] for k, c in self.terms.items()}, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return Expr(self.F, self.base, self._mul_terms(self.terms, o.terms),
                    P.mul(self.F, self.den, o.den))

    def __truediv__(self, o):
        num = o.univariate()
        if num is None or not num:
            raise ParseError("can only divide by a nonzero polynomial in the base variable")
        return Expr(self.F, self.base, self._mul_terms(self.terms, self._poly_terms(o.den)),
                    P.mul(self.F, self.den, num))

    def __pow__(self, n):
        out = Expr.const(self.F, self.base, 1)
        for _ in range(n):
            out = out * self
        return out

    def variables(self):
        return {v for k in self.terms for v, _ in k}

    def univariate(self, var=None):
        """Coefficient tuple if this is a polynomial in one variable (default: the base)."""
        var = var or self.base
        if self.den != P.ONE:
            if P.deg(self.den) == 0:
                inv = self.F.inv_table[self.den[0]]
                scaled = Expr(self.F, self.base, {k: self.F.mul_table[c][inv]
                                                  for k, c in self.terms.items()})
                return scaled.univariate(var)
            return None
        coeffs = {}
        for k, c in self.terms.items():
            if not k:
                coeffs[0] = c
            elif len(k) == 1 and k[0][0] == var:
                coeffs[k[0][1]] = c
            else:
                return None
        if not coeffs:
            return P.ZERO
        return P.trim([coeffs.get(i, 0) for i in range(max(coeffs) + 1)])

    def coefficients_in(self, var):
        """Map exponent of ``var`` -> Expr coefficient (sharing this denominator)."""
        out = {}
        for k, c in self.terms.items():
            d = dict(k)
            e = d.pop(var, 0)
            out.setdefault(e, {})[tuple(sorted(d.items()))] = c
        return {e: Expr(self.F, self.base, t, self.den) for e, t in out.items()}


class _Parser:
    def __init__(self, F, base, text):
        self.F, self.base = F, base
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t != ("sym", sym):
            raise ParseError(f"expected {sym!r}, got {t[1]!r}")

    def parse(self):
        e = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        sign = 1
        if self.peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        e = self.term()
        if sign < 0:
            e = -e
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def _starts_atom(self):
        kind, val = self.peek()
        return kind in ("num", "id") or (kind == "sym" and val == "(")

    def term(self):
        e = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                e = e * self.factor()
            elif kind == "sym" and val == "/":
                self.take()
                e = e / self.factor()
            elif self._starts_atom():
                e = e * self.factor()
            else:
                return e

    def factor(self):
        e = self.atom()
        while self.peek() == ("sym", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            e = e ** n
        return e

    def atom(self):
        kind, val = self.take()
        F, base = self.F, self.base
        if kind == "num":
            return Expr.const(F, base, F.from_int(val))
        if kind == "id":
            if val == "a":
                if F.q != 4:
                    raise ParseError("constant 'a' only exists over F_4")
                return Expr.const(F, base, 2)
            if val in BASE_VARS and base in BASE_VARS and val != base and \
                    self.F is not None and _SYNONYMS[0]:
                val = base
            return Expr.var(F, base, val)
        if kind == "sym" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected token {val!r}")


# x and z are synonyms unless a caller explicitly keeps them apart
_SYNONYMS = [True]


def parse_expr(q, text, base="x", synonyms=True):
    F = GF(q)
    old = _SYNONYMS[0]
    _SYNONYMS[0] = synonyms
    try:
        return _Parser(F, base, text).parse()
    finally:
        _SYNONYMS[0] = old


def _detect_base(text):
    return "z" if re.search(r"(?<![A-Za-z_])z(?![A-Za-z_0-9])", text) else "x"


def parse_poly(q, text, base=None):
    base = base or _detect_base(text)
    e = parse_expr(q, text, base)
    u = e.univariate()
    if u is None:
        raise ParseError(f"not a polynomial in {base}: {text!r}")
    return u


def parse_curve(q, text):
    """Parse ``y^2 + h(x) y + g(x)`` (implicitly = 0, optional ``F:`` prefix)."""
    text = text.strip()
    text = re.sub(r"^F\s*:\s*", "", text)
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        text = f"{lhs} - ({rhs})"
    base = _detect_base(text)
    e = parse_expr(q, text, base)
    F = GF(q)
    if e.den != P.ONE:
        raise ParseError("curve equation must be polynomial")
    by_y = e.coefficients_in("y")
    if set(by_y) - {0, 1, 2}:
        raise ParseError("curve must be quadratic in y")
    lead = by_y.get(2)
    if lead is None or lead.univariate() != P.ONE:
        raise ParseError("coefficient of y^2 must be 1")
    h = by_y[1].univariate() if 1 in by_y else P.ZERO
    g0 = by_y[0].univariate() if 0 in by_y else P.ZERO
    if h is None or g0 is None:
        raise ParseError(f"coefficients must be polynomials in {base}")
    f = P.neg(F, g0)
    top = max(P.deg(f), 2 * P.deg(h))
    genus = max(0, (top + 1) // 2 - 1)
    return cv.validate_curve(q, h, f, genus, var=base)


def _split_top_level(text, sep=","):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def _infinite_generator(C, e):
    """True if e equals 1/x (or a constant multiple)."""
    F = C.F
    num = e.univariate()
    if num is not None:
        return False
    terms = e.terms
    if len(terms) == 1 and () in terms and P.deg(e.den) == 1 and e.den[0] == 0:
        return True
    return False


def _to_chart1(C, e):
    """Express e (a polynomial in x, y over a power of x) in (u, w); return (a(u), b(u))."""
    F = C.F
    den = e.den
    k = P.deg(den)
    if den != P.monic(F, den) or any(den[:-1]):
        raise ParseError("infinite-place generator must have a power of x as denominator")
    lc_inv = F.inv_table[den[-1]]
    g1 = C.genus + 1
    a, b = {}, {}
    for key, c in e.terms.items():
        d = dict(key)
        i = d.pop(C.var, 0)
        j = d.pop("y", 0)
        if d:
            raise ParseError("unexpected variable in place generator")
        ue = -i + k - j * g1
        if ue < 0 or j > 1:
            raise ParseError("generator is not integral at infinity")
        target = b if j else a
        target[ue] = F.mul_table[c][lc_inv]
    mk = lambda d: P.trim([d.get(i, 0) for i in range(max(d) + 1)]) if d else P.ZERO
    return mk(a), mk(b)


def parse_place(C, text):
    F = C.F
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"place must be parenthesised: {text!r}")
    gens = _split_top_level(s[1:-1])
    if len(gens) not in (1, 2) or not gens[0]:
        raise ParseError(f"bad place {text!r}")
    g0 = parse_expr(C.q, gens[0], C.var)
    if _infinite_generator(C, g0):
        chart, p = 1, P.X
    else:
        p = g0.univariate()
        if p is None or P.deg(p) < 1:
            raise ParseError(f"first generator must be a polynomial in {C.var}: {gens[0]!r}")
        p = P.monic(F, p)
        if not P.is_irreducible(F, p):
            raise UnknownPlace(f"{gens[0]!r} is not irreducible")
        chart = 0
    places = cv.places_over(C, chart, p)
    if len(gens) == 1:
        if len(places) != 1:
            raise AmbiguousPlace(f"two places lie over {gens[0]!r}")
        return places[0]
    g1 = parse_expr(C.q, gens[1], C.var)
    if chart == 0:
        if P.deg(g1.den) > 0:
            raise ParseError("second generator must be polynomial")
        by_y = g1.coefficients_in("y")
        if set(by_y) - {0, 1}:
            raise ParseError("second generator must be linear in y")
        a = by_y[0].univariate() if 0 in by_y else P.ZERO
        b = by_y[1].univariate() if 1 in by_y else P.ZERO
        if a is None or b is None:
            raise ParseError("bad second generator")
    else:
        a, b = _to_chart1(C, g1)
    b_p = P.mod(F, b, p)
    if not b_p:
        raise UnknownPlace(f"second generator of {text!r} has no y-term mod the first")
    root = P.mod(F, P.mul(F, P.neg(F, a), P.invmod(F, b_p, p)), p)
    for pl in places:
        if pl.kind != cv.INERT and pl.root == root:
            return pl
    raise UnknownPlace(f"no place of the curve matches {text!r}")


_DIV_TERM = re.compile(r"\s*([+-])?\s*(\d*)\s*\*?\s*\(")


def parse_divisor(C, text):
    s = text.strip()
    if s in ("", "0"):
        return cv.Divisor()
    terms = {}
    pos = 0
    while pos < len(s):
        m = _DIV_TERM.match(s, pos)
        if not m:
            raise ParseError(f"bad divisor syntax near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        start = m.end() - 1
        depth, j = 0, start
        while j < len(s):
            if s[j] == "(":
                depth += 1
            elif s[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth != 0:
            raise ParseError("unbalanced parentheses in divisor")
        pl = parse_place(C, s[start:j + 1])
        terms[pl] = terms.get(pl, 0) + sign * coeff
        pos = j + 1
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return cv.Divisor(terms)


def parse_place_set(C, text):
    s = text.strip()
    s = re.sub(r"^S\s*=\s*", "", s)
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    return [parse_place(C, part) for part in _split_top_level(s) if part] \
        if not s.strip().startswith("(") else _parse_place_list(C, s)


def _parse_place_list(C, s):
    out, depth, start = [], 0, None
    for i, ch in enumerate(s):
        if ch == "(":
            if depth == 0:
                start = i
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                out.append(parse_place(C, s[start:i + 1]))
    return out


# ---------------------------------------------------------------- formatting

def format_coeff(q, c):
    if q == 4:
        return {0: "0", 1: "1", 2: "a", 3: "a^2"}[c]
    return str(c)


def format_poly(q, a, var="x"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if c == 1 and mono:
            parts.append(mono)
        else:
            parts.append(format_coeff(q, c) + mono)
    return " + ".join(parts)


def _times_y(q, b, var, y="y"):
    if b == P.ONE:
        return y
    body = format_poly(q, b, var)
    if sum(1 for c in b if c) == 1 and not (q == 4 and b[-1] not in (0, 1) and len(b) > 1):
        return body + y
    return f"({body}){y}"


def format_curve(C):
    F = C.F
    parts = ["y^2"]
    if C.h:
        parts.append(_times_y(C.q, C.h, C.var))
    g0 = P.neg(F, C.f)
    if g0:
        parts.append(format_poly(C.q, g0, C.var))
    return " + ".join(parts)


def format_place(C, pl):
    F = C.F
    v = C.var
    if pl.chart == 1:
        first = f"1/{v}"
        w = f"y/{v}^{C.genus + 1}" if C.genus + 1 > 1 else f"y/{v}"
    else:
        first = format_poly(C.q, pl.p, v)
        w = "y"
    if pl.kind == cv.INERT:
        return f"({first})"
    s = P.neg(F, pl.root)
    second = w if not s else f"{w} + {format_poly(C.q, s, v)}"
    return f"({first}, {second})"


def format_divisor(C, D):
    if not D:
        return "0"
    out = []
    for pl, n in D.items():
        body = format_place(C, pl)
        sign = "-" if n < 0 else "+"
        mag = abs(n)
        term = body if mag == 1 else f"{mag}{body}"
        out.append((sign, term))
    text = out[0][1] if out[0][0] == "+" else "-" + out[0][1]
    for sign, term in out[1:]:
        text += f" {sign} {term}"
    return text
