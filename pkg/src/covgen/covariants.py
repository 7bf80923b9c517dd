"""Roberts' correspondence, transvectants and semitransvectants.

A covariant of order m is stored by its plain coefficients ``c[a]`` of
``Y1**(m-a) * Y2**a``; Roberts' theorem says ``c[a] = D2**a(c[0]) / a!``.
Semi-invariants are carried in Cayley coordinates (:class:`ZForm`) with the
X-form and the D-chains computed lazily.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

from .poly import FIELD, Poly, Q, UsageError, X, Z, ZForm, primitive_part, unpack
from .weitzenbock import (InvariantViolation, apply, d2, d2_images_in_z, is_semi_invariant,
                          nilpotency_order, x_to_z, z_to_x, z_to_za, za_to_z)

log = logging.getLogger(__name__)

__all__ = [
    "Covariant", "SemiInvariant", "basic_form", "kappa", "kappa_inv", "transvectant",
    "semitransvectant", "semitransvectant_fast", "order_of_semitransvectant",
    "normalize", "falling", "zform_degree_weight",
]


def falling(a: int, i: int) -> int:
    """Falling factorial a (a-1) ... (a-i+1)."""
    out = 1
    for j in range(i):
        out *= a - j
    return out


def zform_degree_weight(f: ZForm) -> tuple[int, int] | None:
    """X-degree and weight of a homogeneous Z-form, ``None`` if mixed."""
    vs = f.varset
    n = vs.nvars
    w = vs.weights
    found = None
    for k in f.numerator.terms:
        e = unpack(k, n)
        deg = sum(ei * (wi if wi else 1) for ei, wi in zip(e, w)) - f.tpow
        wt = sum(ei * wi for ei, wi in zip(e, w))
        if found is None:
            found = (deg, wt)
        elif found != (deg, wt):
            return None
    return found if found is not None else (0, 0)


def normalize(f: ZForm) -> ZForm:
    """Primitive integral numerator with positive leading coefficient."""
    if not f:
        return f
    prim, _ = primitive_part(f.numerator)
    return ZForm(prim, f.tpow)


class SemiInvariant:
    """An isobaric element of ker D1, stored as a canonical Z-form."""

    def __init__(self, zform: ZForm, name: str | None = None, *,
                 degree: int | None = None, order: int | None = None):
        if zform.varset.kind != "Z":
            zform = za_to_z(zform)
        self.zform = zform
        self.name = name
        dw = zform_degree_weight(zform)
        if dw is None:
            raise UsageError("semi-invariants must be isobaric and homogeneous")
        deg, wt = dw
        self.degree = deg if degree is None else degree
        self.weight = wt
        self.order = zform.d * deg - 2 * wt if order is None else order
        self._xform: Poly | None = None
        self._xchain: list[Poly] = []
        self._zchain: list[ZForm] = []

    @classmethod
    def from_x(cls, p: Poly, name: str | None = None) -> "SemiInvariant":
        out = cls(x_to_z(p), name)
        out._xform = p
        return out

    @property
    def d(self) -> int:
        return self.zform.d

    @property
    def xform(self) -> Poly:
        if self._xform is None:
            self._xform = z_to_x(self.zform)
        return self._xform

    def __bool__(self):
        return bool(self.zform)

    def __eq__(self, other):
        if not isinstance(other, SemiInvariant):
            return NotImplemented
        return self.zform == other.zform

    def __hash__(self):
        return hash(self.zform)

    def __mul__(self, other: "SemiInvariant") -> "SemiInvariant":
        return SemiInvariant(self.zform * other.zform)

    def __pow__(self, n: int) -> "SemiInvariant":
        return SemiInvariant(self.zform ** n)

    def __repr__(self):
        label = self.name or "SemiInvariant"
        return f"<{label} deg={self.degree} ord={self.order}: {self.zform}>"

    def x_chain(self, upto: int) -> list[Poly]:
        """[f, D2 f, ..., D2**upto f] in X coordinates."""
        chain = self._xchain
        if not chain:
            chain.append(self.xform)
        D = d2(self.d)
        while len(chain) <= upto:
            chain.append(apply(D, chain[-1]))
        return chain[:upto + 1]

    def z_chain_x1_truncated(self, upto: int) -> list[ZForm]:
        """Like :meth:`z_chain`, but D**a f keeps only x1-degrees <= upto - a.

        Terms of higher x1-degree cannot reach x1**0 within the remaining
        steps, because D lowers the x1-degree by at most one.
        """
        D = d2_images_in_z(self.d)
        cur = z_to_za(self.zform)
        out = [cur]
        for a in range(1, upto + 1):
            cur = _truncate_x1(D(cur), upto - a)
            out.append(cur)
        return out

    def z_chain(self, upto: int) -> list[ZForm]:
        """[f, D f, ..., D**upto f] in the auxiliary ring ZA(d)."""
        chain = self._zchain
        if not chain:
            chain.append(z_to_za(self.zform))
        D = d2_images_in_z(self.d)
        while len(chain) <= upto:
            chain.append(D(chain[-1]))
        return chain[:upto + 1]


def _truncate_x1(f: ZForm, k: int) -> ZForm:
    shift = FIELD
    terms = {key: c for key, c in f.numerator.terms.items() if ((key >> shift) & 0xFF) <= k}
    return ZForm(Poly(f.numerator.varset, terms, _trusted=True), f.tpow)


def basic_form(d: int) -> SemiInvariant:
    return SemiInvariant(ZForm(Z(d).var("t")), "t")


@dataclass
class Covariant:
    """Binary covariant ``sum_a coeffs[a] * Y1**(m-a) * Y2**a``."""

    d: int
    order: int
    coeffs: list[Poly] = field(default_factory=list)

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise UsageError("a covariant of order m has m+1 coefficients")

    @property
    def binomial_coeffs(self) -> list[Poly]:
        """f_a with F = sum f_a * C(m, a) * Y1**(m-a) * Y2**a."""
        return [c.scale(Q(1, comb(self.order, a))) for a, c in enumerate(self.coeffs)]

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def to_poly(self) -> Poly:
        from .poly import VarSet
        vs = VarSet("XY", self.d)
        n = vs.nvars
        out = Poly(vs)
        for a, c in enumerate(self.coeffs):
            items = []
            for k, v in c.terms.items():
                e = list(unpack(k, n - 2)) + [self.order - a, a]
                items.append((e, v))
            out = out + Poly.from_terms(vs, items)
        return out


def kappa(F: Covariant) -> SemiInvariant:
    """Leading coefficient (of Y1**m) as a semi-invariant."""
    return SemiInvariant.from_x(F.coeffs[0])


def kappa_inv(a: SemiInvariant | Poly) -> Covariant:
    """Roberts' reconstruction of the covariant with leading coefficient ``a``."""
    if isinstance(a, Poly):
        a = SemiInvariant.from_x(a)
    if not a:
        raise UsageError("kappa_inv of zero")
    m = a.order
    chain = a.x_chain(m)
    if apply(d2(a.d), chain[-1]):
        raise InvariantViolation("D2**(ord+1) does not vanish")
    return Covariant(a.d, m, [c.scale(Q(1, factorial(i))) for i, c in enumerate(chain)])


def _y_derivative(F: Covariant, p: int, q: int) -> list[Poly]:
    """Coefficients (by Y2 exponent) of d^p/dY1^p d^q/dY2^q F."""
    m = F.order
    out = []
    for a in range(q, m - p + 1):
        c = F.coeffs[a]
        out.append(c.scale(falling(m - a, p) * falling(a, q)))
    return out


def transvectant(F: Covariant, G: Covariant, r: int) -> Covariant:
    """(F, G)^r = sum_i (-1)^i C(r,i) F_{Y1^(r-i) Y2^i} G_{Y1^i Y2^(r-i)}.

    No normalizing prefactor is applied.
    """
    if F.d != G.d:
        raise UsageError("covariants of different forms")
    m, k = F.order, G.order
    if not 0 <= r <= min(m, k):
        raise UsageError(f"transvectant index r={r} outside 0..{min(m, k)}")
    n = m + k - 2 * r
    xs = X(F.d)
    out = [Poly(xs) for _ in range(n + 1)]
    for i in range(r + 1):
        A = _y_derivative(F, r - i, i)
        B = _y_derivative(G, i, r - i)
        s = (-1) ** i * comb(r, i)
        for a, pa in enumerate(A):
            if not pa:
                continue
            for b, pb in enumerate(B):
                if pb:
                    out[a + b] = out[a + b] + (pa * pb).scale(s)
    return Covariant(F.d, n, out)


def _check_range(f: SemiInvariant, g: SemiInvariant, r: int):
    if f.d != g.d:
        raise UsageError("semi-invariants of different forms")
    if not 0 <= r <= min(f.order, g.order):
        raise UsageError(f"semitransvectant index r={r} outside 0..{min(f.order, g.order)}")


def leading_transvectant(f: SemiInvariant, g: SemiInvariant, r: int) -> Poly:
    """kappa((kappa_inv f, kappa_inv g)^r) from the first r+1 Roberts coefficients."""
    _check_range(f, g, r)
    m, k = f.order, g.order
    cf = f.x_chain(r)
    cg = g.x_chain(r)
    acc = Poly(X(f.d))
    for i in range(r + 1):
        j = r - i
        # Y1-leading terms of the two Y-derivatives, with c_a = D2^a / a!
        s = Q((-1) ** i * comb(r, i) * falling(m - i, j) * falling(k - j, i))
        acc = acc + (cf[i] * cg[j]).scale(s)
    return acc


def semitransvectant(f: SemiInvariant, g: SemiInvariant, r: int,
                     name: str | None = None) -> SemiInvariant:
    """[f, g]^r through X coordinates: lift, transvect, project, normalize."""
    lead = leading_transvectant(f, g, r)
    if not lead:
        return SemiInvariant(ZForm(Poly(Z(f.d))), name, degree=f.degree + g.degree,
                             order=f.order + g.order - 2 * r)
    z = normalize(x_to_z(lead))
    out = SemiInvariant(z, name)
    return out


def fast_leading(f: SemiInvariant, g: SemiInvariant, r: int) -> ZForm:
    """Leading coefficient from D-chains in Cayley coordinates, x1 set to 0."""
    _check_range(f, g, r)
    m, k = f.order, g.order
    zf = f.z_chain_x1_truncated(r)
    zg = g.z_chain_x1_truncated(r)
    acc = ZForm(Poly(zf[0].varset))
    for i in range(r + 1):
        a = zf[i].drop_var(1)
        b = zg[r - i].drop_var(1)
        if not a or not b:
            continue
        s = Q((-1) ** i * comb(r, i), falling(m, i) * falling(k, r - i))
        acc = acc + (a * b).scale(s)
    return acc


def semitransvectant_fast(f: SemiInvariant, g: SemiInvariant, r: int,
                          name: str | None = None) -> SemiInvariant:
    """[f, g]^r by the leading-coefficient formula evaluated in Cayley coordinates."""
    lead = fast_leading(f, g, r)
    if not lead:
        return SemiInvariant(ZForm(Poly(Z(f.d))), name, degree=f.degree + g.degree,
                             order=f.order + g.order - 2 * r)
    return SemiInvariant(normalize(za_to_z(lead)), name)


def order_of_semitransvectant(f: SemiInvariant, g: SemiInvariant, r: int) -> int:
    return f.order + g.order - 2 * r


def check_generator(s: SemiInvariant) -> None:
    """Kernel membership and the order law, recomputed from scratch."""
    if not is_semi_invariant(s.xform):
        raise InvariantViolation(f"{s.name} is not annihilated by D1")
    if nilpotency_order(s.xform) != s.order:
        raise InvariantViolation(f"{s.name}: nilpotency order differs from d*deg - 2*wt")


def product(factors: Sequence[tuple[SemiInvariant, int]]) -> SemiInvariant:
    it = iter(factors)
    g, e = next(it)
    z = g.zform ** e
    for g, e in it:
        z = z * g.zform ** e
    return SemiInvariant(z)
