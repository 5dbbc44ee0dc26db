"""Exact arithmetic in Z[t, x] and its fraction field.

Polynomials keep their terms in a dict keyed by a packed exponent pair
(t-degree in the high bits, x-degree in the low bits) so that multiplying
monomials is a single integer addition.  Coefficients are Python ints.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

_SHIFT = 32
_MASK = (1 << _SHIFT) - 1


def _pack(i: int, j: int) -> int:
    if i < 0 or j < 0 or j > _MASK:
        raise ValueError(f"exponent out of range: t^{i} x^{j}")
    return (i << _SHIFT) | j


def _unpack(k: int) -> tuple[int, int]:
    return k >> _SHIFT, k & _MASK


class Poly2:
    """Polynomial in the commuting variables t and x with integer
    coefficients.  Instances are immutable."""

    __slots__ = ("_d",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        d = {}
        if terms:
            for (i, j), c in terms.items():
                if c:
                    k = _pack(i, j)
                    d[k] = d.get(k, 0) + int(c)
            d = {k: c for k, c in d.items() if c}
        self._d = d

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "Poly2":
        p = cls.__new__(cls)
        p._d = d
        return p

    @classmethod
    def const(cls, c: int) -> "Poly2":
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "Poly2":
        return cls._raw({_pack(i, j): int(c)} if c else {})

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return {_unpack(k): c for k, c in self._d.items()}

    def __len__(self) -> int:
        return len(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self) -> bool:
        return bool(self._d)

    def coeff(self, i: int, j: int) -> int:
        return self._d.get(_pack(i, j), 0)

    def constant_term(self) -> int:
        return self._d.get(0, 0)

    def degree_t(self) -> int:
        return max((k >> _SHIFT for k in self._d), default=-1)

    def degree_x(self) -> int:
        return max((k & _MASK for k in self._d), default=-1)

    def content(self) -> int:
        g = 0
        for c in self._d.values():
            g = math.gcd(g, c)
        return g

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and 0 in self._d)

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """Terms as ``(i, j, c)`` by ascending total degree, then t-degree."""
        out = [(*_unpack(k), c) for k, c in self._d.items()]
        out.sort(key=lambda r: (r[0] + r[1], r[0]))
        return out

    def leading_lex_least(self) -> tuple[int, int, int]:
        k = min(self._d)
        return (*_unpack(k), self._d[k])

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        if isinstance(other, int):
            return Poly2.const(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = Poly2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._d == other._d

    def __hash__(self) -> int:
        return hash(frozenset(self._d.items()))

    def __neg__(self) -> "Poly2":
        return Poly2._raw({k: -c for k, c in self._d.items()})

    def __add__(self, other) -> "Poly2":
        other = Poly2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self._d)
        for k, c in other._d.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return Poly2._raw(d)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly2":
        other = Poly2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self._d)
        for k, c in other._d.items():
            s = d.get(k, 0) - c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return Poly2._raw(d)

    def __rsub__(self, other) -> "Poly2":
        return Poly2._coerce(other) - self

    def __mul__(self, other) -> "Poly2":
        other = Poly2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._d, other._d
        if not a or not b:
            return Poly2._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return Poly2._raw({k + kb: c * cb for k, c in a.items()})
        if len(b) > 24:
            return Poly2._raw(_kronecker_mul(a, b))
        d: dict[int, int] = {}
        get = d.get
        bi = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bi:
                k = ka + kb
                d[k] = get(k, 0) + ca * cb
        return Poly2._raw({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly2":
        if e < 0:
            raise ValueError("negative exponent for a polynomial")
        result = Poly2.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale_div(self, c: int) -> "Poly2":
        """Divide every coefficient by the integer ``c`` (must be exact)."""
        out = {}
        for k, v in self._d.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError(f"{c} does not divide {v}")
            out[k] = q
        return Poly2._raw(out)

    def divmod_lex(self, b: "Poly2") -> tuple["Poly2", "Poly2"]:
        """Multivariate division by ``b`` under lex order (t before x).

        Returns ``(q, r)`` with ``self = q*b + r``; the remainder is zero
        exactly when ``b`` divides ``self`` in Z[t, x].
        """
        if not b._d:
            raise ZeroDivisionError("polynomial division by zero")
        lk = max(b._d)
        lc = b._d[lk]
        li, lj = _unpack(lk)
        rem = dict(self._d)
        q: dict[int, int] = {}
        r: dict[int, int] = {}
        bi = [(k - lk, c) for k, c in b._d.items() if k != lk]
        while rem:
            k = max(rem)
            c = rem.pop(k)
            i, j = _unpack(k)
            if i >= li and j >= lj and c % lc == 0:
                qc = c // lc
                qk = k - lk
                q[qk] = q.get(qk, 0) + qc
                for dk, bc in bi:
                    kk = qk + lk + dk
                    v = rem.get(kk, 0) - qc * bc
                    if v:
                        rem[kk] = v
                    else:
                        rem.pop(kk, None)
            else:
                r[k] = c
        return Poly2._raw(q), Poly2._raw(r)

    def exact_div(self, b: "Poly2") -> "Poly2":
        if len(b._d) == 1:
            (kb, cb), = b._d.items()
            out = {}
            for k, c in self._d.items():
                if (k >> _SHIFT) < (kb >> _SHIFT) or (k & _MASK) < (kb & _MASK) or c % cb:
                    raise ArithmeticError("inexact polynomial division")
                out[k - kb] = c // cb
            return Poly2._raw(out)
        q, r = self.divmod_lex(b)
        if r._d:
            raise ArithmeticError("inexact polynomial division")
        return q

    def try_div(self, b: "Poly2") -> "Poly2 | None":
        q, r = self.divmod_lex(b)
        return None if r._d else q

    def substitute_x(self, value: int) -> dict[int, int]:
        """Evaluate at x = value, returning a dict t-degree -> coefficient."""
        out: dict[int, int] = {}
        for k, c in self._d.items():
            i, j = _unpack(k)
            out[i] = out.get(i, 0) + c * value ** j
        return {i: c for i, c in out.items() if c}

    def __repr__(self) -> str:
        return f"Poly2({render_poly(self)!r})"

    def __str__(self) -> str:
        return render_poly(self)


def _kronecker_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Multiply two packed-key polynomials through one big-integer product.

    Both polynomials are mapped to integers by t -> y^W, x -> y with
    y = 2^B; B leaves room for every product coefficient plus a sign
    offset so the result digits can be read back without borrows.
    """
    degx = max(k & _MASK for k in a) + max(k & _MASK for k in b)
    width = degx + 1
    maxa = max(abs(c) for c in a.values())
    maxb = max(abs(c) for c in b.values())
    bound = maxa * maxb * min(len(a), len(b))
    bits = bound.bit_length() + 2
    nbytes = (bits + 7) // 8
    bits = nbytes * 8

    def encode(d):
        n = 0
        for k, c in d.items():
            n += c << (bits * ((k >> _SHIFT) * width + (k & _MASK)))
        return n

    prod = encode(a) * encode(b)
    degt = max(k >> _SHIFT for k in a) + max(k >> _SHIFT for k in b)
    ndig = (degt + 1) * width
    half = 1 << (bits - 1)
    # all-digit offset: half in every slot
    offset = half * (((1 << (bits * ndig)) - 1) // ((1 << bits) - 1))
    raw = (prod + offset).to_bytes(nbytes * ndig, "little")
    out: dict[int, int] = {}
    for pos in range(ndig):
        c = int.from_bytes(raw[pos * nbytes:(pos + 1) * nbytes], "little") - half
        if c:
            i, j = divmod(pos, width)
            out[(i << _SHIFT) | j] = c
    return out


ZERO = Poly2.const(0)
ONE = Poly2.const(1)
T = Poly2.monomial(1, 0)
X = Poly2.monomial(0, 1)


def render_poly(p: Poly2) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, j, c in p.sorted_terms():
        mono = []
        if i:
            mono.append("t" if i == 1 else f"t^{i}")
        if j:
            mono.append("x" if j == 1 else f"x^{j}")
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(a)] + mono)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _is_atomic(p: Poly2) -> bool:
    if len(p) != 1:
        return False
    _, _, c = p.sorted_terms()[0]
    return c > 0


class RatFun2:
    """Quotient of two ``Poly2`` values.

    Normalized so the lexicographically least term of the denominator is
    positive and the common integer content is divided out.  Equality is
    decided by cross multiplication, so two instances may be equal without
    having identical fields; consequently instances are unhashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly2 | int, den: Poly2 | int = 1):
        num = Poly2._coerce(num)
        den = Poly2._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = ONE
        else:
            g = math.gcd(num.content(), den.content())
            if g > 1:
                num, den = num.scale_div(g), den.scale_div(g)
        if den.leading_lex_least()[2] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    __hash__ = None

    @staticmethod
    def _coerce(other) -> "RatFun2":
        if isinstance(other, RatFun2):
            return other
        if isinstance(other, (Poly2, int)):
            return RatFun2(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = RatFun2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __neg__(self) -> "RatFun2":
        return RatFun2(-self.num, self.den)

    def __add__(self, other) -> "RatFun2":
        other = RatFun2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun2(self.num + other.num, self.den)
        return RatFun2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFun2":
        other = RatFun2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFun2":
        return RatFun2._coerce(other) - self

    def __mul__(self, other) -> "RatFun2":
        other = RatFun2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFun2":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun2(self.den, self.num)

    def __truediv__(self, other) -> "RatFun2":
        other = RatFun2._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "RatFun2":
        return RatFun2._coerce(other) * self.inv()

    def __pow__(self, e: int) -> "RatFun2":
        if e < 0:
            return RatFun2(self.den ** -e, self.num ** -e) if not self.num.is_zero() else self.inv()
        return RatFun2(self.num ** e, self.den ** e)

    def cancel(self, factor: Poly2) -> "RatFun2":
        """Divide ``factor`` out of numerator and denominator as many times
        as it divides both."""
        num, den = self.num, self.den
        if factor.is_constant() or num.is_zero():
            return self
        while True:
            qn = num.try_div(factor)
            if qn is None:
                break
            qd = den.try_div(factor)
            if qd is None:
                break
            num, den = qn, qd
        return RatFun2(num, den)

    def __repr__(self) -> str:
        return f"RatFun2({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def rat_equal(a: RatFun2, b: RatFun2) -> bool:
    return a == b


def render(r: RatFun2) -> str:
    """Render in the grammar accepted by :func:`parse_expr`."""
    n = render_poly(r.num)
    if r.den == ONE:
        return n
    if not _is_atomic(r.num):
        n = f"({n})"
    return f"{n}/({render_poly(r.den)})"


# -- power series ----------------------------------------------------------

@dataclass
class SeriesTable:
    """Coefficients of ``t^l x^n`` for all ``n <= norm_bound``.  Missing
    keys are zero."""

    norm_bound: int
    coeffs: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.coeffs.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTable):
            return NotImplemented
        return self.norm_bound == other.norm_bound and self.coeffs == other.coeffs

    def __add__(self, other: "SeriesTable") -> "SeriesTable":
        bound = min(self.norm_bound, other.norm_bound)
        out: dict[tuple[int, int], int] = {}
        for src in (self.coeffs, other.coeffs):
            for (l, n), c in src.items():
                if n <= bound:
                    out[(l, n)] = out.get((l, n), 0) + c
        return SeriesTable(bound, {k: c for k, c in out.items() if c})

    def total(self, norm: int) -> int:
        return sum(c for (_, n), c in self.coeffs.items() if n == norm)

    def to_json(self) -> dict:
        return {
            "norm_bound": self.norm_bound,
            "coeffs": [[l, n, c] for (l, n), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
        }


def series_expand(r: RatFun2, norm_bound: int) -> SeriesTable:
    """Expand ``r`` as a power series in x with coefficients in Z[t],
    keeping every coefficient of ``x^n`` for ``n <= norm_bound``."""
    num = _by_x_degree(r.num)
    den = _by_x_degree(r.den)
    d0 = den.get(0, {})
    if set(d0) - {0} or not d0.get(0):
        raise ValueError("denominator must have a nonzero constant x^0 coefficient")
    c0 = d0[0]
    qs: list[dict[int, int]] = []
    for n in range(norm_bound + 1):
        acc = dict(num.get(n, {}))
        for k in range(1, n + 1):
            dk = den.get(k)
            if not dk:
                continue
            for i, a in dk.items():
                for i2, b in qs[n - k].items():
                    acc[i + i2] = acc.get(i + i2, 0) - a * b
        q = {}
        for i, v in acc.items():
            if v:
                if v % c0:
                    raise ArithmeticError("series coefficients are not integral")
                q[i] = v // c0
        qs.append(q)
    coeffs = {(l, n): c for n, q in enumerate(qs) for l, c in q.items() if c}
    return SeriesTable(norm_bound, coeffs)


def _by_x_degree(p: Poly2) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for (i, j), c in p.terms.items():
        out.setdefault(j, {})[i] = c
    return out


# -- expression parser -----------------------------------------------------

class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([tx]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            op = "^" if m.group(2) == "**" else m.group(2)
            tokens.append(("op", op, m.start(2)))
        else:
            tokens.append(("var", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind == "end":
            raise ExprSyntaxError(f"expected {value!r}", pos)

    def parse(self) -> RatFun2:
        r = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {v!r}", pos)
        return r

    def expr(self) -> RatFun2:
        r = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            r = r + rhs if op == "+" else r - rhs
        return r

    def term(self) -> RatFun2:
        r = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                r = r * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDivisionError(f"division by the zero polynomial at position {pos}")
                r = r / rhs
        return r

    def unary(self) -> RatFun2:
        kind, v, _ = self.peek()
        if kind == "op" and v in ("-", "+"):
            self.take()
            r = self.unary()
            return -r if v == "-" else r
        return self.power()

    def power(self) -> RatFun2:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.take()
                neg = True
            kind, v, pos = self.take()
            if kind != "int":
                raise ExprSyntaxError("exponent must be an integer literal", pos)
            e = int(v)
            if neg:
                if base.is_zero():
                    raise ZeroDivisionError(f"zero raised to a negative power at position {pos}")
                e = -e
            base = base ** e
        return base

    def atom(self) -> RatFun2:
        kind, v, pos = self.take()
        if kind == "int":
            return RatFun2(int(v))
        if kind == "var":
            return RatFun2(T if v == "t" else X)
        if v == "(":
            r = self.expr()
            self.expect(")")
            return r
        raise ExprSyntaxError("unexpected end of input" if kind == "end" else f"unexpected token {v!r}", pos)


def parse_expr(text: str) -> RatFun2:
    """Parse an expression over integers, ``t``, ``x``, ``+ - * / ^`` and
    parentheses into a rational function."""
    return _Parser(text).parse()


def parse_poly(text: str) -> Poly2:
    r = parse_expr(text)
    q = r.num.try_div(r.den)
    if q is None:
        raise ValueError(f"{text!r} is not a polynomial")
    return q


def poly_sum(items: Iterable[Poly2]) -> Poly2:
    total = ZERO
    for p in items:
        total = total + p
    return total
