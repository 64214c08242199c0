"""Exact sparse multivariate polynomials with rational coefficients.

A :class:`Poly` lives over one of two fixed alphabets:

* ``POSITION`` = ``(x0, x1, x2)``, the phase-space coordinates
  (the paper-style names ``x, y, z`` map to ``x0, x1, x2``);
* ``EXTENDED`` = ``(x0, x1, x2, v0, v1, v2)``, positions plus velocities.

Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
dropped, so structural equality is polynomial equality.

Text format::

    1/3*x1^2 + 1/3*x2^2 - 1/3*x0*x2
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Union

POSITION = ("x0", "x1", "x2")
EXTENDED = ("x0", "x1", "x2", "v0", "v1", "v2")
ALPHABETS = (POSITION, EXTENDED)

Scalar = Union[int, Fraction]


class AlphabetError(ValueError):
    """Operands live over different alphabets, or a variable is unknown."""


class PolyParseError(ValueError):
    """Malformed polynomial text. ``position`` is the 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position}: {text!r}")
        self.text = text
        self.position = position


def _check_alphabet(alphabet) -> tuple:
    alphabet = tuple(alphabet)
    if alphabet not in ALPHABETS:
        raise AlphabetError(f"unsupported alphabet {alphabet}")
    return alphabet


class Poly:
    """Immutable polynomial over ``POSITION`` or ``EXTENDED``.

    Examples
    --------
    >>> x0, x1, x2 = Poly.variables()
    >>> str((x0 + x2) * (x0 + x2))
    'x0^2 + 2*x0*x2 + x2^2'
    """

    __slots__ = ("_terms", "_alphabet", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None, alphabet=POSITION):
        alphabet = _check_alphabet(alphabet)
        n = len(alphabet)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for alphabet {alphabet}")
            coeff = _as_fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._alphabet = alphabet
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, alphabet: tuple) -> "Poly":
        # trusted path: terms already canonical
        p = object.__new__(cls)
        p._terms = terms
        p._alphabet = alphabet
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar, alphabet=POSITION) -> "Poly":
        alphabet = _check_alphabet(alphabet)
        return cls({(0,) * len(alphabet): c}, alphabet)

    @classmethod
    def zero(cls, alphabet=POSITION) -> "Poly":
        return cls._raw({}, _check_alphabet(alphabet))

    @classmethod
    def var(cls, name: str, alphabet=None) -> "Poly":
        if alphabet is None:
            alphabet = POSITION if name in POSITION else EXTENDED
        alphabet = _check_alphabet(alphabet)
        if name not in alphabet:
            raise AlphabetError(f"unknown variable {name!r} for alphabet {alphabet}")
        exps = [0] * len(alphabet)
        exps[alphabet.index(name)] = 1
        return cls._raw({tuple(exps): Fraction(1)}, alphabet)

    @classmethod
    def variables(cls, alphabet=POSITION) -> tuple:
        alphabet = _check_alphabet(alphabet)
        return tuple(cls.var(name, alphabet) for name in alphabet)

    @classmethod
    def parse(cls, text: str, alphabet=None) -> "Poly":
        return parse_poly(text, alphabet)

    # -- basic protocol ------------------------------------------------

    @property
    def alphabet(self) -> tuple:
        return self._alphabet

    @property
    def terms(self) -> dict:
        """Copy of the term map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self._alphabet), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def depends_on(self, name: str) -> bool:
        i = self._index(name)
        return any(e[i] for e in self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._alphabet == other._alphabet and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._alphabet, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r}, alphabet={'EXTENDED' if self._alphabet == EXTENDED else 'POSITION'})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other._alphabet != self._alphabet:
                raise AlphabetError(
                    f"alphabet mismatch: {self._alphabet} vs {other._alphabet}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(other, self._alphabet)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(terms, self._alphabet)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self._terms.items()}, self._alphabet)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw({e: c for e, c in terms.items() if c}, self._alphabet)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("can only divide by a nonzero constant")
            other = other.constant_value()
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of Poly by zero")
        return self.scale(Fraction(1) / _as_fraction(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1, self._alphabet)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly.zero(self._alphabet)
        return Poly._raw({e: v * c for e, v in self._terms.items()}, self._alphabet)

    # -- calculus and substitution ---------------------------------------

    def _index(self, name: str) -> int:
        try:
            return self._alphabet.index(name)
        except ValueError:
            raise AlphabetError(f"unknown variable {name!r} for alphabet {self._alphabet}") from None

    def diff(self, name: str) -> "Poly":
        """Exact partial derivative with respect to ``name``."""
        i = self._index(name)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        return Poly._raw(terms, self._alphabet)

    def substitute(self, bindings: Mapping[str, "Poly"], alphabet=None) -> "Poly":
        """Compose: replace each bound variable by a polynomial.

        The destination alphabet is ``alphabet`` if given, otherwise the
        common alphabet of the binding values (or ``self.alphabet`` when
        ``bindings`` is empty). Unbound variables are carried over and must
        exist in the destination alphabet.
        """
        for name in bindings:
            self._index(name)
        if alphabet is None:
            targets = {b.alphabet for b in bindings.values() if isinstance(b, Poly)}
            if len(targets) > 1:
                raise AlphabetError("bindings use more than one alphabet")
            alphabet = targets.pop() if targets else self._alphabet
        alphabet = _check_alphabet(alphabet)

        images = []
        for name in self._alphabet:
            if name in bindings:
                b = bindings[name]
                if not isinstance(b, Poly):
                    b = Poly.const(b, alphabet)
                if b.alphabet != alphabet:
                    raise AlphabetError(f"binding for {name} is not over {alphabet}")
                images.append(b)
            elif name in alphabet:
                images.append(Poly.var(name, alphabet))
            elif self.depends_on(name):
                raise AlphabetError(f"unbound variable {name!r} missing from {alphabet}")
            else:
                images.append(None)

        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        result = Poly.zero(alphabet)
        for e, c in sorted(self._terms.items()):
            term = Poly.const(c, alphabet)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def convert(self, alphabet) -> "Poly":
        """Re-express over another alphabet (lift, or restrict when possible)."""
        alphabet = _check_alphabet(alphabet)
        if alphabet == self._alphabet:
            return self
        if len(alphabet) > len(self._alphabet):
            pad = (0,) * (len(alphabet) - len(self._alphabet))
            return Poly._raw({e + pad: c for e, c in self._terms.items()}, alphabet)
        n = len(alphabet)
        if any(any(e[n:]) for e in self._terms):
            raise AlphabetError(f"polynomial {self} depends on variables outside {alphabet}")
        return Poly._raw({e[:n]: c for e, c in self._terms.items()}, alphabet)

    # -- numeric evaluation ------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in ascending exponent order; the fixed float summation order."""
        return sorted(self._terms.items())

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Float evaluation at ``point`` (scalars or numpy arrays).

        Fractions in ``point`` give an exact result.
        """
        if len(point) != len(self._alphabet):
            raise ValueError(f"expected {len(self._alphabet)} coordinates, got {len(point)}")
        exact = all(isinstance(v, (int, Rational)) for v in point)
        total = Fraction(0) if exact else 0.0
        for e, c in self.sorted_terms():
            term = c if exact else float(c)
            for v, k in zip(point, e):
                if k:
                    term = term * v**k
            total = total + term
        return total


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def variables(alphabet=POSITION) -> tuple:
    return Poly.variables(alphabet)


# ----------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[xv][0-2])|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        kind = m.lastgroup
        if kind == "bad":
            raise PolyParseError(f"unexpected character {m.group(kind)!r}", text, m.start(kind))
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_poly(text: str, alphabet=None) -> Poly:
    """Parse the polynomial text format.

    ``alphabet=None`` picks ``EXTENDED`` if any velocity appears, else
    ``POSITION``.
    """
    if not isinstance(text, str):
        raise PolyParseError("expected a string", repr(text), 0)
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial", text, 0)
    if alphabet is None:
        uses_v = any(k == "var" and v.startswith("v") for k, v, _ in tokens)
        alphabet = EXTENDED if uses_v else POSITION
    alphabet = _check_alphabet(alphabet)
    n = len(alphabet)

    terms: dict = {}
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        kind, val, pos = tokens[i]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError("expected '+' or '-'", text, pos)
        first = False
        coeff = Fraction(sign)
        exps = [0] * n
        factors = 0
        while True:
            if i >= len(tokens):
                raise PolyParseError("expected a factor", text, len(text))
            kind, val, pos = tokens[i]
            if kind == "num":
                num, _, den = val.partition("/")
                if den and int(den) == 0:
                    raise PolyParseError("zero denominator", text, pos)
                coeff *= Fraction(val)
                i += 1
            elif kind == "var":
                if val not in alphabet:
                    raise PolyParseError(f"variable {val} not in alphabet", text, pos)
                i += 1
                power = 1
                if i < len(tokens) and tokens[i][1] == "^":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                        raise PolyParseError("expected integer exponent", text, tokens[i][2])
                    power = int(tokens[i + 1][1])
                    i += 2
                exps[alphabet.index(val)] += power
            else:
                raise PolyParseError(f"unexpected {val!r}", text, pos)
            factors += 1
            # a factor may follow with or without '*'
            if i < len(tokens) and tokens[i][1] == "*":
                i += 1
                continue
            if i < len(tokens) and tokens[i][0] in ("num", "var"):
                continue
            break
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return Poly(terms, alphabet)


def _term_order(item):
    e, _ = item
    # graded, then lexicographic with x0 first
    return (-sum(e), tuple(-k for k in e))


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in sorted(p.items(), key=_term_order):
        mono = "*".join(
            name if k == 1 else f"{name}^{k}" for name, k in zip(p.alphabet, e) if k
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)

