"""Sparse exact-rational polynomials over the coordinate rings used by covgen.

Monomials are packed into a single Python int, ``FIELD`` bits per variable,
with the first variable in the least significant field.  Comparing packed
keys numerically is then lexicographic order with the *last* variable most
significant, so graded lex (variable order t < x1 < ... < xd) is the pair
``(total_degree, key)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Mapping

try:  # gmpy2 is ~10x faster than fractions for the inner loops
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Q

__all__ = [
    "Q", "VarSet", "Poly", "ZForm", "Grading", "UsageError",
    "primitive_part", "grade", "X", "Z", "ZA",
]

FIELD = 8
MASK = (1 << FIELD) - 1
MAX_EXP = MASK


class UsageError(ValueError):
    """Raised when an operation is called with incompatible arguments."""


def as_q(value) -> Q:
    if isinstance(value, str):
        if "/" in value:
            n, d = value.split("/")
            return Q(int(n), int(d))
        return Q(int(value))
    return Q(value)


def q_num_den(c) -> tuple[int, int]:
    return int(c.numerator), int(c.denominator)


@dataclass(frozen=True)
class VarSet:
    """Named variable set.

    ``kind`` is one of ``X`` (t, x1..xd), ``Z`` (t, z2..zd), ``ZA`` (t, x1,
    z2..zd: the Cayley coordinates with x1 kept as an auxiliary symbol, the
    ring where D2 acts), or ``XY`` / ``ZY`` which append Y1, Y2.
    """

    kind: str
    d: int

    def __post_init__(self):
        if self.kind not in ("X", "Z", "ZA", "XY", "ZY"):
            raise UsageError(f"unknown varset kind {self.kind!r}")
        if self.d < 1:
            raise UsageError("form degree must be >= 1")

    @property
    def names(self) -> tuple[str, ...]:
        return _names(self.kind, self.d)

    @property
    def weights(self) -> tuple[int, ...]:
        return _weights(self.kind, self.d)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"{name!r} is not a variable of {self}") from None

    def var(self, name: str) -> "Poly":
        return Poly.monomial(self, {name: 1})

    def __str__(self):
        return f"{self.kind}({self.d})"


@lru_cache(maxsize=None)
def _names(kind: str, d: int) -> tuple[str, ...]:
    if kind.startswith("X"):
        base = ("t",) + tuple(f"x{i}" for i in range(1, d + 1))
    elif kind == "ZA":
        base = ("t", "x1") + tuple(f"z{i}" for i in range(2, d + 1))
    else:
        base = ("t",) + tuple(f"z{i}" for i in range(2, d + 1))
    if kind.endswith("Y"):
        base += ("Y1", "Y2")
    return base


@lru_cache(maxsize=None)
def _weights(kind: str, d: int) -> tuple[int, ...]:
    out = []
    for name in _names(kind, d):
        if name == "t" or name == "Y1":
            out.append(0)
        elif name == "Y2":
            out.append(1)
        else:
            out.append(int(name[1:]))
    return tuple(out)


def X(d: int) -> VarSet:
    return VarSet("X", d)


def Z(d: int) -> VarSet:
    return VarSet("Z", d)


def ZA(d: int) -> VarSet:
    return VarSet("ZA", d)


def pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXP:
            raise UsageError(f"exponent {e} out of range")
        key |= e << (FIELD * i)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (FIELD * i)) & MASK for i in range(n))


def key_degree(key: int) -> int:
    total = 0
    while key:
        total += key & MASK
        key >>= FIELD
    return total


def exponent(key: int, i: int) -> int:
    return (key >> (FIELD * i)) & MASK


def sort_key(key: int) -> tuple[int, int]:
    """Graded-lex sort key of a packed monomial."""
    return key_degree(key), key


@dataclass(frozen=True)
class Grading:
    degree: int
    weight: int


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("varset", "_terms", "_hash")

    def __init__(self, varset: VarSet, terms: Mapping[int, object] | None = None,
                 *, _trusted: bool = False):
        self.varset = varset
        if terms is None:
            self._terms = {}
        elif _trusted:
            self._terms = terms
        else:
            self._terms = {k: as_q(c) for k, c in terms.items() if c != 0}
        self._hash = None

    # -- construction --------------------------------------------------

    @classmethod
    def constant(cls, varset: VarSet, c) -> "Poly":
        c = as_q(c)
        return cls(varset, {0: c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, varset: VarSet, exps: Mapping[str, int], coeff=1) -> "Poly":
        vec = [0] * varset.nvars
        for name, e in exps.items():
            vec[varset.index(name)] += e
        return cls(varset, {pack(vec): as_q(coeff)})

    @classmethod
    def from_terms(cls, varset: VarSet, items: Iterable[tuple[Iterable[int], object]]) -> "Poly":
        terms: dict[int, Q] = {}
        for exps, c in items:
            k = pack(exps)
            terms[k] = terms.get(k, 0) + as_q(c)
        return cls(varset, {k: c for k, c in terms.items() if c}, _trusted=True)

    # -- basic protocol ------------------------------------------------

    @property
    def terms(self) -> dict[int, Q]:
        return self._terms

    def items(self) -> Iterator[tuple[tuple[int, ...], Q]]:
        """(exponent tuple, coefficient) pairs in descending monomial order."""
        n = self.varset.nvars
        for k in self.sorted_keys():
            yield unpack(k, n), self._terms[k]

    def sorted_keys(self, reverse: bool = True) -> list[int]:
        return sorted(self._terms, key=sort_key, reverse=reverse)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.varset == other.varset and self._terms == other._terms
        if isinstance(other, (int, type(Q(0)))):
            return self == Poly.constant(self.varset, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.varset}, {self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.varset != other.varset:
            raise UsageError(f"varset mismatch: {self.varset} vs {other.varset}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.varset, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(self.varset, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.varset, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_q(c)
        if not c:
            return Poly(self.varset)
        return Poly(self.varset, {k: v * c for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if a and b and _max_field(a) + _max_field(b) > MAX_EXP:
            raise UsageError("exponent overflow in product")
        out: dict[int, Q] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        return Poly(self.varset, {k: c for k, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise UsageError("negative power of a polynomial")
        result = Poly.constant(self.varset, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, key: int, c=1) -> "Poly":
        c = as_q(c)
        return Poly(self.varset, {k + key: v * c for k, v in self._terms.items()}, _trusted=True)

    # -- calculus / substitution ---------------------------------------

    def diff(self, var: int | str) -> "Poly":
        i = self.varset.index(var) if isinstance(var, str) else var
        shift = FIELD * i
        unit = 1 << shift
        out = {}
        for k, c in self._terms.items():
            e = (k >> shift) & MASK
            if e:
                out[k - unit] = c * e
        return Poly(self.varset, out, _trusted=True)

    def exponent_max(self, var: int) -> int:
        return max((exponent(k, var) for k in self._terms), default=0)

    def exponent_min(self, var: int) -> int:
        return min((exponent(k, var) for k in self._terms), default=0)

    def drop_var(self, var: int) -> "Poly":
        """Set variable ``var`` to zero."""
        shift = FIELD * var
        return Poly(self.varset, {k: c for k, c in self._terms.items()
                                  if not (k >> shift) & MASK}, _trusted=True)

    def divide_var_power(self, var: int, e: int) -> "Poly":
        """Exact division by ``var**e``; raises if some term is not divisible."""
        if e == 0:
            return self
        unit = e << (FIELD * var)
        out = {}
        for k, c in self._terms.items():
            if exponent(k, var) < e:
                raise ArithmeticError("polynomial not divisible by requested power")
            out[k - unit] = c
        return Poly(self.varset, out, _trusted=True)

    def substitute(self, images: Mapping[int, "Poly"], target: VarSet) -> "Poly":
        """Ring homomorphism sending variable i to ``images[i]`` in ``target``.

        Variables missing from ``images`` must exist in ``target`` by name.
        """
        n = self.varset.nvars
        names = self.varset.names
        imgs: list[Poly] = []
        for i in range(n):
            if i in images:
                imgs.append(images[i])
            else:
                imgs.append(target.var(names[i]))
        cache: dict[tuple[int, int], Poly] = {}

        def power(i, e):
            p = cache.get((i, e))
            if p is None:
                p = imgs[i] if e == 1 else power(i, e - 1) * imgs[i]
                cache[(i, e)] = p
            return p

        acc: dict[int, Q] = {}
        one = Poly.constant(target, 1)
        for k, c in self._terms.items():
            term = one
            for i, e in enumerate(unpack(k, n)):
                if e:
                    term = term * power(i, e)
                    if not term:
                        break
            for kk, cc in term._terms.items():
                acc[kk] = acc.get(kk, 0) + c * cc
        return Poly(target, {k: c for k, c in acc.items() if c}, _trusted=True)

    # -- order / grading -----------------------------------------------

    def leading_key(self) -> int:
        return max(self._terms, key=sort_key)

    def leading_coefficient(self) -> Q:
        return self._terms[self.leading_key()]

    def total_degree(self) -> int:
        return max((key_degree(k) for k in self._terms), default=0)

    def content(self) -> Q:
        """Positive rational c with self/c integral and primitive."""
        num = 0
        den = 1
        for c in self._terms.values():
            n, d = q_num_den(c)
            num = gcd(num, n)
            den = den * d // gcd(den, d)
        return Q(num, den)

    # -- text serialization ------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        names = self.varset.names
        parts = []
        for exps, c in self.items():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            n, d = q_num_den(c)
            sign = "-" if n < 0 else "+"
            mag = f"{abs(n)}" if d == 1 else f"{abs(n)}/{d}"
            if factors:
                body = "*".join(factors) if mag == "1" else mag + "*" + "*".join(factors)
            else:
                body = mag
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def from_text(cls, varset: VarSet, text: str) -> "Poly":
        """Parse the output of :meth:`to_text` (sum of signed monomials)."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls(varset)
        if s[0] not in "+-":
            s = "+" + s
        items = []
        for sign, body in _TERM_RE.findall(s):
            if not body:
                raise UsageError(f"cannot parse {text!r}")
            coeff = Q(1)
            exps = [0] * varset.nvars
            for factor in body.split("*"):
                if _NUM_RE.fullmatch(factor):
                    coeff *= as_q(factor)
                    continue
                name, _, e = factor.partition("^")
                exps[varset.index(name)] += int(e) if e else 1
            items.append((exps, -coeff if sign == "-" else coeff))
        rebuilt = "".join(sign + body for sign, body in _TERM_RE.findall(s))
        if rebuilt != s:
            raise UsageError(f"cannot parse {text!r}")
        return cls.from_terms(varset, items)


_TERM_RE = re.compile(r"([+-])([^+-]+)")
_NUM_RE = re.compile(r"\d+(/\d+)?")


def _max_field(terms: Mapping[int, object]) -> int:
    m = 0
    for k in terms:
        while k:
            f = k & MASK
            if f > m:
                m = f
            k >>= FIELD
    return m


def primitive_part(p: Poly) -> tuple[Poly, Q]:
    """Split ``p = c * p'`` with ``p'`` integral, primitive, positive leading term.

    The zero polynomial returns ``(0, 1)``.
    """
    if not p:
        return p, Q(1)
    c = p.content()
    if p.leading_coefficient() < 0:
        c = -c
    return p.scale(1 / c), c


def grade(p: Poly) -> Grading | None:
    """Common (degree, weight) of all terms, or ``None`` if inhomogeneous.

    Y1 and Y2 do not count towards the degree.
    """
    vs = p.varset
    n = vs.nvars
    weights = vs.weights
    counted = [name not in ("Y1", "Y2") for name in vs.names]
    found = None
    for k in p.terms:
        exps = unpack(k, n)
        g = Grading(sum(e for e, ok in zip(exps, counted) if ok),
                    sum(e * w for e, w in zip(exps, weights)))
        if found is None:
            found = g
        elif g != found:
            return None
    return found if found is not None else Grading(0, 0)


class ZForm:
    """Laurent-in-t element ``numerator / t**tpow``.

    The numerator lives over ``Z(d)`` (semi-invariants) or ``ZA(d)``.  The
    canonical form has a numerator not divisible by t, so equality is
    syntactic; ``tpow`` may be negative (``t`` itself is ``1 / t**-1``).
    """

    __slots__ = ("numerator", "tpow")

    def __init__(self, numerator: Poly, tpow: int = 0):
        if numerator.varset.kind not in ("Z", "ZA"):
            raise UsageError("ZForm numerators live over Z(d) or ZA(d)")
        if not numerator:
            tpow = 0
        else:
            m = numerator.exponent_min(0)
            if m:
                numerator = numerator.divide_var_power(0, m)
                tpow -= m
        self.numerator = numerator
        self.tpow = tpow

    @property
    def varset(self) -> VarSet:
        return self.numerator.varset

    @property
    def d(self) -> int:
        return self.varset.d

    def __bool__(self):
        return bool(self.numerator)

    def __eq__(self, other):
        if not isinstance(other, ZForm):
            return NotImplemented
        return self.tpow == other.tpow and self.numerator == other.numerator

    def __hash__(self):
        return hash((self.numerator, self.tpow))

    def __repr__(self):
        return f"ZForm({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def __mul__(self, other):
        if isinstance(other, ZForm):
            return ZForm(self.numerator * other.numerator, self.tpow + other.tpow)
        return ZForm(self.numerator.scale(other), self.tpow)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return ZForm(self.numerator ** n, self.tpow * n)

    def _aligned(self, other: "ZForm"):
        s = max(self.tpow, other.tpow)
        a = self.numerator.mul_monomial(pack_var(0, s - self.tpow, self.varset.nvars)) if s > self.tpow else self.numerator
        b = other.numerator.mul_monomial(pack_var(0, s - other.tpow, self.varset.nvars)) if s > other.tpow else other.numerator
        return a, b, s

    def __add__(self, other):
        if not self:
            return other
        if not other:
            return self
        a, b, s = self._aligned(other)
        return ZForm(a + b, s)

    def __neg__(self):
        return ZForm(-self.numerator, self.tpow)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ZForm":
        return ZForm(self.numerator.scale(c), self.tpow)

    def drop_var(self, var: int) -> "ZForm":
        return ZForm(self.numerator.drop_var(var), self.tpow)

    def to_text(self) -> str:
        if not self:
            return "0"
        num = self.numerator.to_text()
        if self.tpow == 0:
            return num
        if self.tpow < 0:
            e = -self.tpow
            tp = "t" if e == 1 else f"t^{e}"
            return tp if num == "1" else f"({num})*{tp}"
        tp = "t" if self.tpow == 1 else f"t^{self.tpow}"
        return f"({num})/{tp}"

    def to_json(self) -> dict:
        n = self.varset.nvars
        terms = []
        for k in self.numerator.sorted_keys():
            num, den = q_num_den(self.numerator.terms[k])
            terms.append({"exponents": list(unpack(k, n)), "num": num, "den": den})
        return {"varset": self.varset.kind, "d": self.d, "tpow": self.tpow, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "ZForm":
        vs = VarSet(data.get("varset", "Z"), int(data["d"]))
        poly = Poly.from_terms(vs, ((t["exponents"], Q(int(t["num"]), int(t["den"])))
                                    for t in data["terms"]))
        zf = cls(poly, int(data["tpow"]))
        if zf.tpow != int(data["tpow"]) or len(zf.numerator) != len(data["terms"]):
            raise UsageError("ZForm JSON is not in canonical form")
        return zf


def pack_var(var: int, e: int, nvars: int) -> int:
    if e < 0 or e > MAX_EXP or var >= nvars:
        raise UsageError("bad variable power")
    return e << (FIELD * var)
