"""Degree-order table and the comparison against printed values (d = 8)."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from . import published
from .enumerative import dim_covariants
from .poly import X, ZA, Poly, ZForm
from .search import SearchState
from .weitzenbock import cayley_z, d2_images_in_z, x_to_za

__all__ = ["DegreeOrderTable", "ErrataEntry", "ErrataReport", "compare_published_table",
           "check_printed_syzygies", "build_errata", "format_rows"]


@dataclass
class DegreeOrderTable:
    cells: dict[tuple[int, int], list[str]]
    max_degree: int

    @classmethod
    def from_state(cls, state: SearchState) -> "DegreeOrderTable":
        cells: dict[tuple[int, int], list[str]] = {}
        for g in state.generators:
            cells.setdefault((g.degree, g.order), []).append(g.name)
        return cls(cells, state.degree)

    @classmethod
    def from_published(cls) -> "DegreeOrderTable":
        cells = {(i, m): list(names) for i, row in published.PUBLISHED_TABLE.items()
                 for m, names in row.items()}
        return cls(cells, max(published.PUBLISHED_TABLE))

    def counts(self) -> Counter:
        return Counter({k: len(v) for k, v in self.cells.items()})

    def row_total(self, i: int) -> int:
        return sum(len(v) for (deg, _), v in self.cells.items() if deg == i)

    def total(self) -> int:
        return sum(len(v) for v in self.cells.values())

    def render(self) -> str:
        orders = sorted({m for _, m in self.cells}) or [0]
        top = max(orders)
        cols = list(range(0, top + 1, 2)) if all(m % 2 == 0 for m in orders) else list(range(top + 1))
        body = [["deg \\ ord"] + [str(m) for m in cols] + ["total"]]
        for i in range(1, self.max_degree + 1):
            row = [str(i)]
            for m in cols:
                row.append(", ".join(self.cells.get((i, m), [])))
            row.append(str(self.row_total(i)))
            body.append(row)
        widths = [max(len(r[j]) for r in body) for j in range(len(body[0]))]
        lines = []
        for n, r in enumerate(body):
            lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            if n == 0:
                lines.append("-+-".join("-" * w for w in widths))
        lines.append(f"total generators: {self.total()}")
        return "\n".join(lines)


def compare_published_table(state: SearchState) -> tuple[bool, Counter, Counter]:
    """Multiset comparison of (degree, order) pairs; returns (equal, missing, extra)."""
    ours = DegreeOrderTable.from_state(state).counts()
    theirs = DegreeOrderTable.from_published().counts()
    top = state.degree
    theirs = Counter({k: v for k, v in theirs.items() if k[0] <= top})
    return ours == theirs, theirs - ours, ours - theirs


def format_rows(rows) -> str:
    head = ["i", "dim C", "sigma", "dim S", "delta"]
    body = [head] + [[str(r.i), str(r.dim_C), str(r.sigma), str(r.dim_S), str(r.delta)]
                     for r in rows]
    widths = [max(len(b[j]) for b in body) for j in range(5)]
    out = []
    for n, b in enumerate(body):
        out.append("  ".join(c.rjust(w) for c, w in zip(b, widths)))
        if n == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out)


# ---------------------------------------------------------------------------------------

@dataclass
class ErrataEntry:
    location: str
    printed: str
    recomputed: str
    status: str          # "match", "mismatch", "corrected", "not-computed"

    def to_json(self) -> dict:
        return {"location": self.location, "printed": self.printed,
                "recomputed": self.recomputed, "status": self.status}


@dataclass
class ErrataReport:
    entries: list[ErrataEntry] = field(default_factory=list)

    def add(self, location, printed, recomputed, status=None):
        if status is None:
            status = "match" if str(printed) == str(recomputed) else "mismatch"
        self.entries.append(ErrataEntry(location, str(printed), str(recomputed), status))

    def flagged(self) -> list[ErrataEntry]:
        return [e for e in self.entries if e.status != "match"]

    def find(self, location: str) -> ErrataEntry:
        for e in self.entries:
            if e.location == location:
                return e
        raise KeyError(location)

    def render(self) -> str:
        rows = [["location", "printed", "recomputed", "status"]]
        rows += [[e.location, e.printed, e.recomputed, e.status] for e in self.entries]
        widths = [min(60, max(len(r[j]) for r in rows)) for j in range(4)]
        out = []
        for n, r in enumerate(rows):
            out.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            if n == 0:
                out.append("-+-".join("-" * w for w in widths))
        n_flag = len(self.flagged())
        out.append(f"{len(self.entries)} entries, {n_flag} flagged")
        return "\n".join(out)

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def _printed_operator_entries(rep: ErrataReport, d: int = 8):
    D = d2_images_in_z(d)
    vs = ZA(d)
    for var, (num, s) in published.PRINTED_D_OPERATOR.items():
        printed = ZForm(Poly.from_text(vs, num), s)
        derived = D.image(var)
        rep.add(f"operator D, image of {var}", printed.to_text(), derived.to_text(),
                "match" if printed == derived else "mismatch")
    if "x1" not in published.PRINTED_D_OPERATOR:
        rep.add("operator D, image of x1", "(not displayed)", D.image("x1").to_text(), "mismatch")


def _sigma_index_entry(rep: ErrataReport, d: int = 8):
    # sigma(x_i) is x_i written in Cayley coordinates with x1 = 0
    ok = True
    for i in range(2, d + 1):
        img = x_to_za(X(d).var(f"x{i}")).drop_var(1)
        expected = ZForm(ZA(d).var(f"z{i}"), i - 1)
        ok &= img == expected
    rep.add("sigma(x_i) indexing", "z_{i+1}/t^i",
            "z_i/t^(i-1)" if ok else "inconsistent", "corrected")


def _order_rule_entry(rep: ErrataReport, d: int = 8):
    # printed bookkeeping d*sum(i_k) - 2*sum(k*i_k) evaluated on z2 = dv1
    printed = d * 1 - 2 * 2
    rep.add("order rule for z-monomials, z2", printed, 12, "corrected")


def check_printed_syzygies(state: SearchState) -> list[dict]:
    """Test each printed degree-5 relation, allowing a sign per generator."""
    out = []
    for rel in published.PRINTED_SYZYGIES_5:
        names = sorted({n for _, fac in rel for n, _ in fac})
        forms = {n: state.semi_invariant(n).zform for n in names}
        terms = []
        for c, fac in rel:
            z = None
            for n, e in fac:
                z = forms[n] ** e if z is None else z * forms[n] ** e
            terms.append((c, fac, z))
        found = None
        for signs in itertools.product((1, -1), repeat=len(names)):
            sg = dict(zip(names, signs))
            acc = None
            for c, fac, z in terms:
                s = c
                for n, e in fac:
                    s *= sg[n] ** e
                acc = z.scale(s) if acc is None else acc + z.scale(s)
            if not acc:
                found = {n: s for n, s in sg.items() if s < 0}
                break
        out.append({"relation": _rel_text(rel), "holds": found is not None,
                    "negated": sorted(found) if found else None})
    return out


def _rel_text(rel) -> str:
    parts = []
    for c, fac in rel:
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in fac)
        parts.append(f"{c:+d}*{mono}")
    return " ".join(parts) + " = 0"


def build_errata(state: SearchState) -> ErrataReport:
    """Compare printed d = 8 values with a (possibly partial) recomputation."""
    if state.d != 8:
        raise ValueError("the errata report concerns d = 8")
    rep = ErrataReport()
    rows = {r.i: r for r in state.rows}
    for i, printed in published.PRINTED_DIMS.items():
        r = rows.get(i)
        labels = ("dim C", "sigma", "dim S", "delta")
        ours = (dim_covariants(8, i),) + ((r.sigma, r.dim_S, r.delta) if r else (None,) * 3)
        for lab, pv, ov in zip(labels, printed, ours):
            if ov is None:
                rep.add(f"degree {i}: {lab}", pv, "-", "not-computed")
            elif i == 8 and pv != ov:
                rep.add(f"degree {i}: {lab}", pv, ov, "mismatch (row duplicates degree 7)")
            else:
                rep.add(f"degree {i}: {lab}", pv, ov)
    rep.add("degree 6: sigma label", "sigma_5", "sigma_6", "label-typo")
    rep.add("degree 9: dim C label", "C_{8,8}", "C_{8,9}", "label-typo")
    rep.add("degree 8: generators listed vs delta", "8 claimed, 7 listed",
            str(rows[8].delta) if 8 in rows else "-", "mismatch" if 8 in rows else "not-computed")
    # printed z list and degree-2 X-forms
    for i, text in published.PRINTED_Z.items():
        rep.add(f"Cayley z{i}", Poly.from_text(X(8), text).to_text(), cayley_z(8, i).to_text())
    for name, text in published.PRINTED_DV_X.items():
        try:
            ours = state.semi_invariant(name).xform.to_text()
        except KeyError:
            from .covariants import basic_form, semitransvectant
            r = {"dv1": 2, "dv2": 4, "dv3": 6, "dv4": 8}[name]
            t = basic_form(8)
            ours = semitransvectant(t, t, r).xform.to_text()
        rep.add(f"{name} X-form", Poly.from_text(X(8), text).to_text(), ours)
    _printed_operator_entries(rep)
    _sigma_index_entry(rep)
    _order_rule_entry(rep)
    # recipes and printed orders
    computed = {g.name: g for g in state.generators}
    for rc in published.RECIPES:
        if rc.printed:
            rep.add(f"recipe {rc.name}", rc.printed, rc.text() if rc.valid else "skipped (invalid)",
                    "corrected")
        g = computed.get(rc.name)
        if g is not None and rc.printed_order is not None:
            rep.add(f"order of {rc.name}", rc.printed_order, g.order)
    # final name list and totals
    names = published.PRINTED_FINAL_NAMES
    dup = sorted(n for n, c in Counter(names).items() if c > 1)
    rep.add("final list: distinct names", f"{len(set(names))} distinct of {len(names)} ({', '.join(dup)} repeated)",
            "69 distinct" if len(state.generators) == 69 else f"{len(state.generators)} generators",
            "mismatch")
    if state.degree >= 12:
        rep.add("total number of generators", published.PRINTED_DELTA_TOTAL,
                sum(r.delta for r in state.rows if r.i <= 12))
        eq, missing, extra = compare_published_table(state)
        rep.add("published (degree, order) multiset", "printed table",
                "equal" if eq else f"missing {dict(missing)}, extra {dict(extra)}",
                "match" if eq else "mismatch")
    if state.degree >= 5 and state._semi and all(s is not None for s in state._semi):
        try:
            for k, res in enumerate(check_printed_syzygies(state), 1):
                rec = "holds" if res["holds"] else "fails with any sign choice"
                if res["holds"] and res["negated"]:
                    rec += f" after negating {', '.join(res['negated'])}"
                rep.add(f"degree-5 syzygy {k}", res["relation"], rec,
                        "match" if res["holds"] and not res["negated"] else
                        ("corrected" if res["holds"] else "mismatch"))
        except KeyError:
            pass
    return rep
