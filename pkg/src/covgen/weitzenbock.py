"""The derivations D1, D2 on Q[t, x1..xd] and the Cayley coordinates.

D1 = t d/dx1 + 2 x1 d/dx2 + ... + d x_{d-1} d/dxd annihilates exactly the
semi-invariants; D2 = d x1 d/dt + (d-1) x2 d/dx1 + ... + xd d/dx_{d-1} is the
lowering operator whose nilpotency order is the order of a covariant.

Everything in Cayley coordinates (t, z2..zd, with x1 kept as an auxiliary
symbol) is derived here from those two formulas, never written down by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping

from .poly import (FIELD, Poly, Q, UsageError, VarSet, X, Z, ZA, ZForm, grade, pack_var,
                   unpack)

__all__ = [
    "Derivation", "ZDerivation", "NotSemiInvariant", "InvariantViolation",
    "d1", "d2", "apply", "is_semi_invariant", "cayley_z", "nilpotency_order",
    "x_to_z", "z_to_x", "x_to_za", "za_to_x", "d2_images_in_z",
]


class NotSemiInvariant(ValueError):
    """x_to_z was given a polynomial outside ker D1."""

    def __init__(self, witness: Poly):
        self.witness = witness
        super().__init__(f"not annihilated by D1; D1(p) contains {witness}")


class InvariantViolation(AssertionError):
    """An internal consistency check failed (always a bug)."""


@dataclass(frozen=True)
class Derivation:
    """A derivation of a polynomial ring given by the images of its variables."""

    varset: VarSet
    images: tuple[Poly, ...]

    @classmethod
    def from_map(cls, varset: VarSet, images: Mapping[str, Poly]) -> "Derivation":
        zero = Poly(varset)
        imgs = []
        for name in varset.names:
            img = images.get(name, zero)
            if img.varset != varset:
                raise UsageError("derivation image over the wrong varset")
            imgs.append(img)
        return cls(varset, tuple(imgs))

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def image(self, name: str) -> Poly:
        return self.images[self.varset.index(name)]


def apply(D: Derivation, p: Poly) -> Poly:
    """Leibniz extension of ``D`` applied to ``p``."""
    if p.varset != D.varset:
        raise UsageError(f"varset mismatch: {p.varset} vs {D.varset}")
    out: dict[int, Q] = {}
    n = D.varset.nvars
    for i in range(n):
        img = D.images[i]
        if not img:
            continue
        shift = FIELD * i
        unit = 1 << shift
        for k, c in p.terms.items():
            e = (k >> shift) & 0xFF
            if not e:
                continue
            base = k - unit
            ce = c * e
            for ki, ci in img.terms.items():
                kk = base + ki
                out[kk] = out.get(kk, 0) + ce * ci
    return Poly(D.varset, {k: c for k, c in out.items() if c}, _trusted=True)


@lru_cache(maxsize=None)
def d1(d: int) -> Derivation:
    vs = X(d)
    images = {"x1": vs.var("t")}
    for i in range(2, d + 1):
        images[f"x{i}"] = vs.var(f"x{i - 1}").scale(i)
    return Derivation.from_map(vs, images)


@lru_cache(maxsize=None)
def d2(d: int) -> Derivation:
    vs = X(d)
    images = {"t": vs.var("x1").scale(d)}
    for i in range(1, d):
        images[f"x{i}"] = vs.var(f"x{i + 1}").scale(d - i)
    return Derivation.from_map(vs, images)


def is_semi_invariant(p: Poly) -> bool:
    if p.varset.kind != "X":
        raise UsageError("semi-invariance is tested in X coordinates")
    return not apply(d1(p.varset.d), p)


@lru_cache(maxsize=None)
def cayley_z(d: int, i: int) -> Poly:
    """Cayley's semi-invariant z_i (degree i, weight i) in X coordinates."""
    if not 2 <= i <= d:
        raise UsageError(f"z_{i} needs 2 <= i <= d={d}")
    vs = X(d)
    n = vs.nvars
    items = []
    for k in range(i - 1):
        exps = [0] * n
        exps[i - k] += 1
        exps[1] += k
        exps[0] += i - k - 1
        items.append((exps, (-1) ** k * comb(i, k)))
    exps = [0] * n
    exps[1] = i
    items.append((exps, (i - 1) * (-1) ** (i + 1)))
    return Poly.from_terms(vs, items)


def nilpotency_order(p: Poly, check: bool = True) -> int:
    """max{s : D2^s(p) != 0}; cross-checked against d*deg - 2*wt."""
    if not p:
        raise UsageError("order of the zero polynomial is undefined")
    d = p.varset.d
    D = d2(d)
    cap = d * p.total_degree() + 1
    s = 0
    q = apply(D, p)
    while q:
        s += 1
        if s > cap:
            raise InvariantViolation("D2 failed to terminate below d*deg + 1")
        q = apply(D, q)
    if check:
        g = grade(p)
        if g is not None and is_semi_invariant(p) and s != d * g.degree - 2 * g.weight:
            raise InvariantViolation(f"order {s} != d*deg - 2*wt for {g}")
    return s


def _z_index(vs: VarSet, i: int) -> int:
    return vs.index(f"z{i}")


def x_to_z(p: Poly, check: bool = True) -> ZForm:
    """Rewrite a semi-invariant as F(t, z2..zd) / t**s.

    Uses the homomorphism x1 -> 0, x_i -> z_i / t**(i-1), which is the
    identity on ker D1.
    """
    if p.varset.kind != "X":
        raise UsageError("x_to_z expects an X(d) polynomial")
    d = p.varset.d
    if check:
        w = apply(d1(d), p)
        if w:
            lead = w.leading_key()
            raise NotSemiInvariant(Poly(w.varset, {lead: w.terms[lead]}, _trusted=True))
    zs = Z(d)
    n = p.varset.nvars
    mapped = []
    for k, c in p.terms.items():
        exps = unpack(k, n)
        if exps[1]:
            continue
        shift = sum((i - 1) * exps[i] for i in range(2, d + 1))
        zexp = (exps[0],) + exps[2:]
        mapped.append((zexp, shift, c))
    if not mapped:
        return ZForm(Poly(zs))
    s = max(m[1] for m in mapped)
    items = []
    for zexp, shift, c in mapped:
        items.append(((zexp[0] + s - shift,) + zexp[1:], c))
    return ZForm(Poly.from_terms(zs, items), s)


@lru_cache(maxsize=None)
def _x_images_in_za(d: int) -> tuple[Poly, ...]:
    """A_k with x_k = A_k / t**(k-1) in ZA(d), for k = 0..d (A_0 = t)."""
    vs = ZA(d)
    t, x1 = vs.var("t"), vs.var("x1")
    out = [t, x1]
    for k in range(2, d + 1):
        acc = x1 ** k
        for j in range(k - 1):
            acc = acc + vs.var(f"z{k - j}") * x1 ** j * comb(k, j)
        out.append(acc)
    return tuple(out)


def x_to_za(p: Poly) -> ZForm:
    """Express any X-polynomial in the Laurent ring Q[t, 1/t, x1, z2..zd]."""
    if p.varset.kind != "X":
        raise UsageError("x_to_za expects an X(d) polynomial")
    d = p.varset.d
    vs = ZA(d)
    images = _x_images_in_za(d)
    n = p.varset.nvars
    cache: dict[tuple[int, int], Poly] = {}

    def power(i, e):
        key = (i, e)
        out = cache.get(key)
        if out is None:
            out = images[i] if e == 1 else power(i, e - 1) * images[i]
            cache[key] = out
        return out

    decoded = [(unpack(k, n), c) for k, c in p.terms.items()]
    if not decoded:
        return ZForm(Poly(vs))
    shifts = [sum((i - 1) * e[i] for i in range(2, d + 1)) for e, _ in decoded]
    s = max(shifts)
    acc: dict[int, Q] = {}
    for (exps, c), shift in zip(decoded, shifts):
        base = pack_var(0, exps[0] + s - shift, vs.nvars) + pack_var(1, exps[1], vs.nvars)
        term = None
        for i in range(2, d + 1):
            if exps[i]:
                term = power(i, exps[i]) if term is None else term * power(i, exps[i])
        if term is None:
            acc[base] = acc.get(base, 0) + c
            continue
        for kk, cc in term.terms.items():
            key = kk + base
            acc[key] = acc.get(key, 0) + c * cc
    return ZForm(Poly(vs, {k: v for k, v in acc.items() if v}, _trusted=True), s)


def z_to_x(f: ZForm) -> Poly:
    """Substitute the X-forms of z_i and divide exactly by t**tpow."""
    d = f.d
    xs = X(d)
    src = f.varset
    images = {}
    for i in range(2, d + 1):
        images[_z_index(src, i)] = cayley_z(d, i)
    num = f.numerator.substitute(images, xs)
    if f.tpow >= 0:
        try:
            return num.divide_var_power(0, f.tpow)
        except ArithmeticError:
            raise InvariantViolation(f"corrupt ZForm: numerator not divisible by t^{f.tpow}") from None
    return num.mul_monomial(pack_var(0, -f.tpow, xs.nvars))


za_to_x = z_to_x


def z_to_za(f: ZForm) -> ZForm:
    """Embed a Z(d) form into the auxiliary ring ZA(d)."""
    if f.varset.kind == "ZA":
        return f
    d = f.d
    vs = ZA(d)
    n = f.varset.nvars
    items = []
    for k, c in f.numerator.terms.items():
        e = unpack(k, n)
        items.append(((e[0], 0) + e[1:], c))
    return ZForm(Poly.from_terms(vs, items), f.tpow)


def za_to_z(f: ZForm) -> ZForm:
    """Project a ZA(d) form without x1 back onto Z(d)."""
    if f.varset.kind == "Z":
        return f
    d = f.d
    vs = Z(d)
    n = f.varset.nvars
    items = []
    for k, c in f.numerator.terms.items():
        e = unpack(k, n)
        if e[1]:
            raise UsageError("form still depends on x1")
        items.append(((e[0],) + e[2:], c))
    return ZForm(Poly.from_terms(vs, items), f.tpow)


@dataclass(frozen=True)
class ZDerivation:
    """Extension D of D2 to Q[t, 1/t, x1, z2..zd].

    ``dt`` is the polynomial D(t); every other image is ``numerators[v] / t``.
    """

    d: int
    dt: Poly
    numerators: tuple[Poly, ...]

    def image(self, name: str) -> ZForm:
        vs = ZA(self.d)
        if name == "t":
            return ZForm(self.dt, 0)
        return ZForm(self.numerators[vs.index(name)], 1)

    def __call__(self, f: ZForm) -> ZForm:
        F, s = f.numerator, f.tpow
        if F.varset != ZA(self.d):
            f = z_to_za(f)
            F, s = f.numerator, f.tpow
        out: dict[int, Q] = {}
        for i in range(1, len(self.numerators)):
            img = self.numerators[i]
            shift = FIELD * i
            unit = 1 << shift
            for k, c in F.terms.items():
                e = (k >> shift) & 0xFF
                if not e:
                    continue
                base = k - unit
                ce = c * e
                for ki, ci in img.terms.items():
                    kk = base + ki
                    out[kk] = out.get(kk, 0) + ce * ci
        # t*dF/dt - s*F, times D(t): the t-derivative and the 1/t**s factor together
        for k, c in F.terms.items():
            e = k & 0xFF
            coef = c * (e - s)
            if not coef:
                continue
            for ki, ci in self.dt.terms.items():
                kk = k + ki
                out[kk] = out.get(kk, 0) + coef * ci
        return ZForm(Poly(F.varset, {k: c for k, c in out.items() if c}, _trusted=True), s + 1)

    def to_text(self) -> str:
        vs = ZA(self.d)
        lines = [f"D(t) = {self.dt.to_text()}"]
        for name in vs.names[1:]:
            lines.append(f"D({name}) = {self.image(name).to_text()}")
        return "\n".join(lines)


@lru_cache(maxsize=None)
def d2_images_in_z(d: int) -> ZDerivation:
    """Derive D(t), D(x1), D(z_i) from D2 acting on the X-forms."""
    if d < 2:
        raise UsageError("Cayley coordinates need d >= 2")
    vs = ZA(d)
    D = d2(d)
    xs = X(d)
    dt_z = x_to_za(apply(D, xs.var("t")))
    if dt_z.tpow > 0:
        raise InvariantViolation("D(t) is not a polynomial")
    dt = dt_z.numerator.mul_monomial(pack_var(0, -dt_z.tpow, vs.nvars))
    nums = [Poly(vs)]
    sources = [xs.var("x1")] + [cayley_z(d, i) for i in range(2, d + 1)]
    for src in sources:
        img = x_to_za(apply(D, src))
        if img.tpow > 1:
            raise InvariantViolation("image has a pole of order > 1 in t")
        nums.append(img.numerator.mul_monomial(pack_var(0, 1 - img.tpow, vs.nvars)) if img else Poly(vs))
    return ZDerivation(d, dt, tuple(nums))
