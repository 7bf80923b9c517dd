"""Published reference data for d = 8, transcribed as printed.

Values here are the *printed* ones, typos included; the errata report compares
them with recomputation.  Recipes are stored with the corrections the search
actually uses, and each correction records the printed form alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "PRINTED_Z", "PRINTED_DV_X", "PRINTED_DIMS", "PRINTED_D_OPERATOR", "PRINTED_DELTA_TOTAL",
    "Recipe", "RECIPES", "PUBLISHED_TABLE", "PRINTED_SYZYGIES_5", "CLASSICAL_COUNTS",
    "recipes_for_degree", "PRINTED_FINAL_NAMES",
]

# Cayley polynomials as printed, rewritten in the package's text syntax.
PRINTED_Z = {
    2: "x2*t - x1^2",
    3: "x3*t^2 + 2*x1^3 - 3*x1*x2*t",
    4: "x4*t^3 - 3*x1^4 + 6*x1^2*x2*t - 4*x1*x3*t^2",
    5: "x5*t^4 + 4*x1^5 - 10*x1^3*x2*t + 10*x1^2*x3*t^2 - 5*x1*x4*t^3",
    6: "x6*t^5 - 5*x1^6 + 15*x1^4*x2*t - 20*x1^3*x3*t^2 + 15*x1^2*x4*t^3 - 6*x1*x5*t^4",
    7: "x7*t^6 + 6*x1^7 - 21*x1^5*x2*t + 35*x1^4*x3*t^2 - 35*x1^3*x4*t^3"
       " + 21*x1^2*x5*t^4 - 7*x1*x6*t^5",
    8: "28*x1^6*x2*t - 56*x1^5*x3*t^2 - 56*x1^3*x5*t^4 + 28*x1^2*x6*t^5"
       " - 8*x1*x7*t^6 - 7*x1^8 + 70*x1^4*x4*t^3 + x8*t^7",
}

# Degree-2 generators: X-forms and Z-forms as printed.
PRINTED_DV_X = {
    "dv1": "x2*t - x1^2",
    "dv2": "x4*t - 4*x1*x3 + 3*x2^2",
    "dv3": "x6*t - 6*x1*x5 + 15*x2*x4 - 10*x3^2",
    "dv4": "-8*x1*x7 + x8*t + 28*x2*x6 - 56*x3*x5 + 35*x4^2",
}
PRINTED_DV_Z = {
    "dv1": ("z2", 0),
    "dv2": ("z4 + 3*z2^2", 2),
    "dv3": ("z6 + 15*z2*z4 - 10*z3^2", 4),
    "dv4": ("z8 + 28*z2*z6 - 56*z3*z5 + 35*z4^2", 6),
}

# i -> (dim C, sigma, dim S, delta) as printed; None where not printed.
PRINTED_DIMS: dict[int, tuple] = {
    2: (5, 1, 0, 4),
    3: (13, 5, 0, 8),
    4: (33, 23, 0, 10),
    5: (73, 65, 3, 11),
    6: (151, 172, 30, 9),
    7: (289, 385, 104, 8),
    8: (289, 385, 104, 8),       # duplicate of the degree-7 row
    9: (910, 1782, 877, 5),
    10: (1514, 3673, 2162, 3),
    11: (2430, 7355, 4927, 2),
    12: (3788, 14520, 10733, 1),
}
PRINTED_DELTA_TOTAL = 69

# The displayed operator D for d = 8: variable -> (numerator, t-power of the denominator).
PRINTED_D_OPERATOR = {
    "t": ("7*x1", 0),
    "z2": ("10*x1*z2 + 5*z3", 1),
    "z3": ("15*x1*z3 - 18*z2^2 + 4*z4", 1),
    "z4": ("20*x1*z4 - 24*z2*z3 + 3*z5", 1),
    "z5": ("2*z6 + 25*x1*z5 - 30*z2*z4", 1),
    "z6": ("z7 + 30*x1*z6 - 36*z2*z5", 1),
    "z7": ("35*x1*z7 - 42*z2*z6", 1),
    "z8": ("48*x1*z8 - 56*z2*z7", 1),
}


@dataclass(frozen=True)
class Recipe:
    """``name = [t, prod(factors)]^r`` with factors as (generator name, exponent)."""

    name: str
    degree: int
    factors: tuple[tuple[str, int], ...]
    r: int
    printed_order: int | None
    note: str = ""
    printed: str = ""
    valid: bool = True

    def text(self) -> str:
        w = " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.factors)
        return f"[t, {w}]^{self.r}"


def _r(name, degree, factors, r, order, note="", printed="", valid=True):
    if isinstance(factors, str):
        factors = ((factors, 1),)
    return Recipe(name, degree, tuple(factors), r, order, note, printed, valid)


RECIPES: tuple[Recipe, ...] = (
    _r("dv1", 2, "t", 2, 12), _r("dv2", 2, "t", 4, 8),
    _r("dv3", 2, "t", 6, 4), _r("dv4", 2, "t", 8, 0),

    _r("tr1", 3, "dv1", 3, 14), _r("tr2", 3, "dv1", 4, 12),
    _r("tr3", 3, "dv1", 5, 10), _r("tr4", 3, "dv1", 7, 6),
    _r("tr5", 3, "dv2", 4, 8), _r("tr6", 3, "dv2", 6, 4),
    _r("tr7", 3, "dv2", 8, 0), _r("tr8", 3, "dv1", 1, 18),

    _r("ch1", 4, "tr4", 2, 10), _r("ch2", 4, "tr4", 5, 4),
    _r("ch3", 4, "tr5", 8, 0), _r("ch4", 4, "tr6", 4, 4),
    _r("ch5", 4, "tr1", 4, 14), _r("ch6", 4, "tr1", 5, 12),
    _r("ch7", 4, "tr1", 6, 10), _r("ch8", 4, "tr1", 7, 8),
    _r("ch9", 4, "tr2", 1, 18), _r("ch10", 4, "tr2", 7, 6),

    _r("pt1", 5, (("dv3", 2),), 6, 4), _r("pt2", 5, (("dv3", 2),), 7, 2),
    _r("pt3", 5, (("dv3", 2),), 8, 0), _r("pt4", 5, "ch1", 2, 14),
    _r("pt5", 5, "ch1", 4, 10), _r("pt6", 5, "ch1", 5, 8),
    _r("pt7", 5, "ch1", 7, 4), _r("pt8", 5, "ch2", 1, 10),
    _r("pt9", 5, "ch4", 1, 10), _r("pt10", 5, "ch4", 3, 6),
    _r("pt11", 5, (("dv3", 2),), 5, 6,
       note="printed factor dv2^3 has degree 6, making the result degree 7; "
            "dv3^2 with r=5 gives degree 5 and the printed order 6",
       printed="[t, dv2^3]^5"),

    _r("sh1", 6, (("tr6", 1), ("dv3", 1)), 6, 4), _r("sh2", 6, (("tr6", 1), ("dv3", 1)), 7, 2),
    _r("sh3", 6, (("tr6", 1), ("dv3", 1)), 8, 0), _r("sh4", 6, "pt5", 5, 8),
    _r("sh5", 6, "pt6", 5, 6), _r("sh6", 6, "pt8", 6, 6),
    _r("sh7", 6, "pt9", 6, 6,
       note="r=4 gives order 10, not the printed 6; r=6 matches the printed order",
       printed="[t, pt9]^4"),
    _r("sh8", 6, "pt9", 7, 4), _r("sh9", 6, "pt10", 2, 10),

    _r("si1", 7, (("ch10", 1), ("dv3", 1)), 7, 4), _r("si2", 7, (("tr6", 2),), 5, 6),
    _r("si3", 7, (("tr6", 2),), 7, 2), _r("si4", 7, (("tr6", 2),), 8, 0),
    _r("si5", 7, "sh9", 6, 6), _r("si6", 7, "sh9", 7, 4),
    _r("si7", 7, (("ch4", 1), ("dv3", 1)), 5, 6), _r("si8", 7, (("ch10", 1), ("dv3", 1)), 8, 2),

    _r("vi1", 8, (("ch4", 1), ("tr6", 1)), 7, 2), _r("vi2", 8, (("ch4", 1), ("tr6", 1)), 8, 0),
    _r("vi3", 8, (("ch2", 1), ("tr6", 1)), 5, 6), _r("vi4", 8, (("pt10", 1), ("dv3", 1)), 7, 4),
    _r("vi5", 8, (("pt10", 1), ("dv3", 1)), 8, 2), _r("vi6", 8, (("ch4", 1), ("tr6", 1)), 5, 6),
    _r("vi7", 8, (("ch4", 1), ("tr6", 1)), 6, 4),

    _r("de1", 9, "vi2", 6, 4, valid=False,
       note="vi2 has order 0, so r=6 exceeds the admissible range", printed="[t, vi2]^6"),
    _r("de2", 9, "vi2", 7, 2, valid=False,
       note="vi2 has order 0, so r=7 exceeds the admissible range", printed="[t, vi2]^7"),
    _r("de3", 9, (("sh2", 1), ("dv3", 1)), 6, 2), _r("de4", 9, (("pt1", 1), ("tr6", 1)), 8, 0),
    _r("de5", 9, (("ch4", 2),), 7, 2),

    _r("des1", 10, (("pt1", 1), ("ch4", 1)), 8, 0), _r("des2", 10, (("si2", 1), ("dv3", 1)), 8, 2),
    _r("des3", 10, (("pt10", 1), ("ch4", 1)), 8, 2),

    _r("odn1", 11, (("si3", 1), ("tr6", 1)), 6, 2), _r("odn2", 11, (("vi7", 1), ("dv3", 1)), 7, 2),

    _r("dvan", 12, (("vi5", 1), ("tr6", 1)), 6, 2),
)


def recipes_for_degree(i: int) -> list[Recipe]:
    return [rc for rc in RECIPES if rc.degree == i]


# Degree-order table: degree -> {order: [names]} as printed.
PUBLISHED_TABLE: dict[int, dict[int, list[str]]] = {
    1: {8: ["t"]},
    2: {0: ["dv4"], 4: ["dv3"], 8: ["dv2"], 12: ["dv1"]},
    3: {0: ["tr7"], 4: ["tr6"], 6: ["tr4"], 8: ["tr5"], 10: ["tr3"], 12: ["tr2"],
        14: ["tr1"], 18: ["tr8"]},
    4: {0: ["ch3"], 4: ["ch2", "ch4"], 6: ["ch10"], 8: ["ch8"], 10: ["ch1", "ch7"],
        12: ["ch6"], 14: ["ch5"], 18: ["ch9"]},
    5: {0: ["pt3"], 2: ["pt2"], 4: ["pt1", "pt7"], 6: ["pt10", "pt11"], 8: ["pt6"],
        10: ["pt5", "pt8", "pt9"], 14: ["pt4"]},
    6: {0: ["sh3"], 2: ["sh2"], 4: ["sh1", "sh8"], 6: ["sh5", "sh6", "sh7"], 8: ["sh4"],
        10: ["sh9"]},
    7: {0: ["si4"], 2: ["si3", "si8"], 4: ["si1", "si6"], 6: ["si2", "si5", "si7"]},
    8: {0: ["vi2"], 2: ["vi1", "vi5"], 4: ["vi4", "vi7"], 6: ["vi3", "vi6"]},
    9: {0: ["de4"], 2: ["de2", "de3", "de5"], 4: ["de1"]},
    10: {0: ["des1"], 2: ["des2", "des3"]},
    11: {2: ["odn1", "odn2"]},
    12: {2: ["dvan"]},
}

# Final list as printed (with its repeated names).
PRINTED_FINAL_NAMES = (
    ["t"] + [f"dv{i}" for i in range(1, 5)] + [f"tr{i}" for i in range(1, 9)]
    + [f"ch{i}" for i in range(1, 11)] + [f"pt{i}" for i in range(1, 12)]
    + ["sh1", "sh2", "sh3", "sh4", "sh5", "sh6", "sh7", "sh7", "sh9"]
    + ["si1", "si2", "sh3", "sh4", "sh5", "sh6", "sh7", "si8"]
    + [f"vi{i}" for i in range(1, 8)] + [f"de{i}" for i in range(1, 6)]
    + ["des1", "des2", "des2", "odn1", "odn2", "dvan"]
)

# The three printed degree-5 syzygies: lists of (coefficient, [(name, exponent), ...]).
PRINTED_SYZYGIES_5 = (
    [(-12, [("ch1", 1), ("t", 1)]), (55, [("tr1", 1), ("dv3", 1)]),
     (-55, [("tr3", 1), ("dv2", 1)]), (1, [("ch7", 1), ("t", 1)])],
    [(5, [("ch5", 1), ("t", 1)]), (383, [("tr4", 1), ("t", 2)]),
     (-176, [("tr8", 1), ("dv3", 1)]), (176, [("tr3", 1), ("dv1", 1)])],
    [(-1, [("ch9", 1), ("t", 1)]), (-126, [("tr8", 1), ("dv2", 1)]),
     (126, [("tr1", 1), ("dv1", 1)]), (1, [("tr3", 1), ("t", 2)])],
)

# Classical sizes of minimal covariant systems.
CLASSICAL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 5, 5: 23, 6: 26, 8: 69}
