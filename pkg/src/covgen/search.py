"""Degree-by-degree construction of a minimal generating system.

Work is organised by blocks: semi-invariants of degree i and weight w form a
space of known dimension (:func:`enumerative.block_dim`), products of the
generators found so far span part of it, and new generators are semitransvectants
``[t, w]^r`` that enlarge the span.  Spans are measured on evaluations mod p
(:mod:`covgen.evaluation`), which gives rigorous lower bounds on ranks over Q:
a block that reaches full rank mod p is certainly spanned.  Product ranks are
additionally computed exactly up to ``exact_max_degree`` and confirmed with a
second prime and an independent point set above it.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import published
from .covariants import (SemiInvariant, basic_form, semitransvectant, semitransvectant_fast)
from .enumerative import (DimensionRow, PipelineInconsistency, block_dim, delta,
                          dim_covariants, poincare_sigma)
from .evaluation import PointSet
from .linalg import PRIMES, Echelon, rank_exact
from .poly import Poly, Q, UsageError, ZForm

log = logging.getLogger(__name__)

SCHEMA = "covgen/1"
MODES = ("paper", "generic")

__all__ = [
    "SCHEMA", "SearchConfig", "GeneratorRecord", "ProductMonomial", "SyzygyBasis",
    "SearchState", "SearchError", "CheckpointError", "enumerate_products",
    "syzygy_space", "candidate_semitransvectants", "select_irreducible", "run_search",
    "save_state", "load_state",
]


class SearchError(RuntimeError):
    """A degree could not be completed; the message names the degree."""


class CheckpointError(ValueError):
    """A checkpoint file does not follow the expected schema."""


@dataclass
class SearchConfig:
    exact_max_degree: int = 7
    direct_check_max_degree: int = 5
    seed: int = 8
    slack: int = 24
    threads: int = 1
    zforms: bool = True

    def to_json(self) -> dict:
        # thread count is a scheduling knob, not part of the result
        return {"exact_max_degree": self.exact_max_degree,
                "direct_check_max_degree": self.direct_check_max_degree,
                "seed": self.seed, "zforms": self.zforms}


@dataclass
class GeneratorRecord:
    name: str
    degree: int
    order: int
    recipe: dict
    zform: ZForm | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def weight(self) -> int:
        return (self.recipe_d * self.degree - self.order) // 2

    recipe_d: int = 0

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "order": self.order,
                "recipe": self.recipe,
                "zform": self.zform.to_json() if self.zform is not None else None,
                "flags": list(self.flags)}

    @classmethod
    def from_json(cls, data: dict, d: int) -> "GeneratorRecord":
        z = data.get("zform")
        return cls(data["name"], int(data["degree"]), int(data["order"]), data["recipe"],
                   ZForm.from_json(z) if z is not None else None, list(data.get("flags", [])),
                   recipe_d=d)


@dataclass(frozen=True)
class ProductMonomial:
    """Product of generators, stored as a nondecreasing tuple of generator indices."""

    indices: tuple[int, ...]
    degree: int
    weight: int

    def exponents(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for i in self.indices:
            if out and out[-1][0] == i:
                out[-1] = (i, out[-1][1] + 1)
            else:
                out.append((i, 1))
        return out

    def label(self, names: list[str]) -> str:
        return "*".join(names[i] if e == 1 else f"{names[i]}^{e}" for i, e in self.exponents())


@dataclass
class SyzygyBasis:
    degree: int
    products: list[ProductMonomial]
    basis: list[dict[int, Q]]          # sparse vectors indexed by position in ``products``
    dim: int
    method: str


@dataclass
class Lane:
    """Numeric images of all generators at one point set."""

    points: PointSet
    seqs: list[np.ndarray] = field(default_factory=list)     # full coefficient sequences
    trunc: list[np.ndarray] = field(default_factory=list)    # first d+1 rows, zero padded

    def add(self, seq: np.ndarray):
        d = self.points.d
        self.seqs.append(seq)
        t = np.zeros((d + 1, self.points.M), dtype=np.int64)
        n = min(d + 1, seq.shape[0])
        t[:n] = seq[:n]
        self.trunc.append(t)

    def lead_of_product(self, idx: tuple[int, ...]) -> np.ndarray:
        p = self.points.p
        v = self.seqs[idx[0]][0]
        for i in idx[1:]:
            v = (v * self.seqs[i][0]) % p
        return v

    def trunc_of_product(self, idx: tuple[int, ...], rows: int) -> np.ndarray:
        P = self.points
        v = self.trunc[idx[0]][:rows]
        for i in idx[1:]:
            v = P.mul(v, self.trunc[i][:rows], trunc=rows)
        return v

    def full_of_product(self, idx: tuple[int, ...]) -> np.ndarray:
        v = self.seqs[idx[0]]
        for i in idx[1:]:
            v = self.points.mul(v, self.seqs[i])
        return v


@dataclass
class SearchState:
    d: int
    mode: str
    config: SearchConfig
    rows: list[DimensionRow] = field(default_factory=list)
    generators: list[GeneratorRecord] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)
    syzygies: dict[int, SyzygyBasis] = field(default_factory=dict)
    # runtime caches, rebuilt on load
    _semi: list[SemiInvariant] = field(default_factory=list, repr=False)
    _lanes: list[Lane] = field(default_factory=list, repr=False)
    _xforms: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return self.rows[-1].i if self.rows else 0

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def deltas(self) -> dict[int, int]:
        return {r.i: r.delta for r in self.rows}

    def by_degree(self) -> dict[int, list[GeneratorRecord]]:
        out: dict[int, list[GeneratorRecord]] = defaultdict(list)
        for g in self.generators:
            out[g.degree].append(g)
        return dict(out)

    def generator(self, name: str) -> GeneratorRecord:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def semi_invariant(self, name: str) -> SemiInvariant:
        for g, s in zip(self.generators, self._semi):
            if g.name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "d": self.d,
            "mode": self.mode,
            "config": self.config.to_json(),
            "rows": [r.to_json() for r in self.rows],
            "generators": [g.to_json() for g in self.generators],
            "certificates": self.certificates,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------------------
# products

def _weights(state: SearchState) -> list[int]:
    d = state.d
    return [(d * g.degree - g.order) // 2 for g in state.generators]


def enumerate_products(state: SearchState, i: int, include_single: bool = False
                       ) -> list[ProductMonomial]:
    """All products of total degree i of generators of degree < i, canonical order.

    Products are nondecreasing index tuples in lexicographic order.  With
    ``include_single`` a generator of degree exactly i counts as a product.
    """
    degs = [g.degree for g in state.generators]
    wts = _weights(state)
    n = len(degs)
    out: list[ProductMonomial] = []

    def rec(start: int, remaining: int, acc: list[int], wt: int):
        if remaining == 0:
            if len(acc) >= 2 or (include_single and len(acc) == 1):
                out.append(ProductMonomial(tuple(acc), i, wt))
            return
        for g in range(start, n):
            if degs[g] <= remaining and (degs[g] < i or include_single):
                acc.append(g)
                rec(g, remaining - degs[g], acc, wt + wts[g])
                acc.pop()

    rec(0, i, [], 0)
    return out


def _check_sigma(state: SearchState, i: int, products: list[ProductMonomial]) -> int:
    sigma = poincare_sigma(state.deltas(), i)
    if len(products) != sigma:
        raise PipelineInconsistency(
            f"degree {i}: enumerated {len(products)} products but sigma = {sigma}")
    return sigma


# ---------------------------------------------------------------------------------------
# exact syzygies

def _xform(state: SearchState, idx: tuple[int, ...]) -> Poly:
    cache = state._xforms
    hit = cache.get(idx)
    if hit is not None:
        return hit
    if len(idx) == 1:
        out = state._semi[idx[0]].xform
    else:
        out = _xform(state, idx[:-1]) * _xform(state, idx[-1:])
    cache[idx] = out
    return out


def syzygy_space(state: SearchState, i: int, products: list[ProductMonomial] | None = None
                 ) -> SyzygyBasis:
    """Exact basis of linear relations among the degree-i products (X-form coordinates)."""
    if products is None:
        products = enumerate_products(state, i)
    blocks: dict[int, list[int]] = defaultdict(list)
    for pos, pm in enumerate(products):
        blocks[pm.weight].append(pos)
    basis: list[dict[int, Q]] = []
    methods = set()
    for w in sorted(blocks):
        members = blocks[w]
        polys = [_xform(state, products[pos].indices) for pos in members]
        keys = sorted({k for p in polys for k in p.terms})
        col = {k: j for j, k in enumerate(keys)}
        # transpose: rows = monomials, columns = products; its kernel holds the syzygies
        mat = [[Q(0)] * len(members) for _ in keys]
        for j, p in enumerate(polys):
            for k, c in p.terms.items():
                mat[col[k]][j] = c
        res = rank_exact(mat, ncols=len(members), nullspace=True)
        methods.add(res.method.split("(")[0])
        for vec in res.nullspace or []:
            basis.append({members[j]: v for j, v in enumerate(vec) if v})
    for vec in basis:
        _verify_syzygy(state, products, vec)
    state._xforms.clear()
    return SyzygyBasis(i, products, basis, len(basis), "+".join(sorted(methods)) or "trivial")


def _verify_syzygy(state, products, vec):
    acc = None
    for pos, c in vec.items():
        term = _xform(state, products[pos].indices).scale(c)
        acc = term if acc is None else acc + term
    if acc:
        raise PipelineInconsistency("a syzygy vector does not contract to zero")


# ---------------------------------------------------------------------------------------
# candidates

@dataclass(frozen=True)
class Candidate:
    r: int
    product: ProductMonomial
    name: str | None = None
    note: str = ""

    @property
    def key(self):
        return (self.r, self.product.indices)


def _r_lower(state: SearchState, pm: ProductMonomial) -> int:
    """Smallest r allowed by max(ord u, ord v) <= r over the splits w = u*v."""
    if len(pm.indices) == 1:
        return 1
    orders = [state.generators[i].order for i in pm.indices]
    idx = pm.indices
    best = None
    # splits into two nonempty sub-multisets
    n = len(idx)
    seen = set()
    for mask in range(1, (1 << n) - 1):
        u = tuple(idx[j] for j in range(n) if mask >> j & 1)
        if u in seen:
            continue
        seen.add(u)
        v = tuple(idx[j] for j in range(n) if not mask >> j & 1)
        ou = sum(state.generators[j].order for j in u)
        ov = sum(state.generators[j].order for j in v)
        m = max(ou, ov)
        best = m if best is None else min(best, m)
    del orders
    return max(best, 1)


def candidate_semitransvectants(state: SearchState, i: int, widen: bool = False,
                                weights: set[int] | None = None) -> list[Candidate]:
    """Generic pool of [t, w]^r with w a degree-(i-1) product, ordered by (r, w)."""
    d = state.d
    pool = enumerate_products(state, i - 1, include_single=True)
    out = []
    for pm in pool:
        ow = d * (i - 1) - 2 * pm.weight
        hi = min(d, ow)
        lo = 1 if widen else _r_lower(state, pm)
        for r in range(lo, hi + 1):
            if weights is not None and pm.weight + r not in weights:
                continue
            out.append(Candidate(r, pm))
    out.sort(key=lambda c: c.key)
    return out


def _recipe_candidates(state: SearchState, i: int) -> tuple[list[Candidate], list[str]]:
    names = state.names
    index = {n: k for k, n in enumerate(names)}
    wts = _weights(state)
    out, notes = [], []
    for rc in published.recipes_for_degree(i):
        if not rc.valid:
            notes.append(f"{rc.name}: {rc.printed} skipped ({rc.note})")
            continue
        try:
            idx = tuple(sorted(k for n, e in rc.factors for k in [index[n]] * e))
        except KeyError as exc:
            notes.append(f"{rc.name}: factor {exc} not available")
            continue
        pm = ProductMonomial(idx, i - 1, sum(wts[k] for k in idx))
        out.append(Candidate(rc.r, pm, rc.name, rc.note))
    return out, notes


# ---------------------------------------------------------------------------------------
# selection

@dataclass
class BlockData:
    weight: int
    dim: int
    products: list[int]
    rank: int
    echelons: list[Echelon]


def _block_rank(lane_echelons, vectors):
    for E, v in zip(lane_echelons, vectors):
        E.add(v)


def _map(state: SearchState, fn, items):
    if state.config.threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=state.config.threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _product_blocks(state: SearchState, i: int, products: list[ProductMonomial]
                    ) -> dict[int, BlockData]:
    d = state.d
    M = state._lanes[0].points.M
    by_w: dict[int, list[int]] = defaultdict(list)
    for pos, pm in enumerate(products):
        by_w[pm.weight].append(pos)
    blocks = {}
    for w in range(0, d * i // 2 + 1):
        dim = block_dim(d, i, w)
        if dim == 0 and not by_w.get(w):
            continue
        if dim > M:
            raise SearchError(f"degree {i}: block of dimension {dim} exceeds {M} points")
        blocks[w] = BlockData(w, dim, by_w.get(w, []), 0,
                              [Echelon(M, lane.points.p, capacity=dim) for lane in state._lanes])

    def fill(w):
        blk = blocks[w]
        for lane, E in zip(state._lanes, blk.echelons):
            for pos in blk.products:
                if E.rank == blk.dim:
                    break
                E.add(lane.lead_of_product(products[pos].indices))
        ranks = [E.rank for E in blk.echelons]
        if len(set(ranks)) != 1:
            raise SearchError(f"degree {i}, weight {w}: product ranks differ between primes {ranks}")
        blk.rank = ranks[0]
        return w

    _map(state, fill, sorted(blocks))
    return blocks


def select_irreducible(state: SearchState, i: int, blocks: dict[int, BlockData],
                       candidates: list[Candidate]) -> list[tuple[Candidate, list[np.ndarray]]]:
    """Greedy extension of the product span, one candidate at a time in the given order.

    Returns accepted candidates with their full numeric sequences per lane.
    """
    d = state.d
    lanes = state._lanes
    need = {w: b.dim - b.echelons[0].rank for w, b in blocks.items()}
    accepted = []
    todo = [c for c in candidates if need.get(c.product.weight + c.r, 0) > 0]

    def lead(c: Candidate):
        pm = c.product
        ow = d * (i - 1) - 2 * pm.weight
        vecs = []
        for lane in lanes:
            W = lane.trunc_of_product(pm.indices, c.r + 1)
            vecs.append(lane.points.leading(lane.trunc[0], W, d, ow, c.r))
        return vecs

    batch = max(8, 4 * state.config.threads)
    pos = 0
    while pos < len(todo) and any(v > 0 for v in need.values()):
        chunk = [c for c in todo[pos:pos + batch] if need.get(c.product.weight + c.r, 0) > 0]
        pos += batch
        results = _map(state, lead, chunk)
        for c, vecs in zip(chunk, results):
            w = c.product.weight + c.r
            if need.get(w, 0) <= 0:
                continue
            if not vecs[0].any():
                continue
            blk = blocks[w]
            grew = [E.add(v) for E, v in zip(blk.echelons, vecs)]
            if grew[0] != all(grew):
                raise SearchError(f"degree {i}: primes disagree on independence of {c.key}")
            if grew[0]:
                need[w] -= 1
                accepted.append(c)
    short = {w: n for w, n in need.items() if n > 0}
    return accepted, short


# ---------------------------------------------------------------------------------------
# driver

def _recipe_json(state: SearchState, c: Candidate) -> dict:
    return {"op": "semitransvectant", "f": "t",
            "g": [[state.generators[k].name, e] for k, e in c.product.exponents()],
            "r": c.r}


def _exact_semi(state: SearchState, c: Candidate, i: int) -> SemiInvariant:
    t = state._semi[0]
    w = state._semi[c.product.indices[0]]
    for k in c.product.indices[1:]:
        w = w * state._semi[k]
    fast = semitransvectant_fast(t, w, c.r)
    if i <= state.config.direct_check_max_degree:
        direct = semitransvectant(t, w, c.r)
        if direct.zform != fast.zform:
            log.warning("fast route disagrees with the direct route for %s; using direct", c.key)
            fast = direct
    return fast


def _proportional(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    nz = np.nonzero(b)[0]
    if nz.size == 0 or (a[b == 0] != 0).any():
        return False
    j = int(nz[0])
    ratio = int(a[j]) * pow(int(b[j]), -1, p) % p
    return bool(ratio) and bool(((b * ratio) % p == a).all())


def _add_generator(state: SearchState, rec: GeneratorRecord, semi: SemiInvariant | None,
                   seqs: list[np.ndarray]):
    for lane, s in zip(state._lanes, seqs):
        lane.add(s)
    state.generators.append(rec)
    state._semi.append(semi)


def _max_block(d: int, max_degree: int) -> int:
    return max(block_dim(d, i, w) for i in range(1, max_degree + 1)
               for w in range(d * i // 2 + 1))


def new_state(d: int, mode: str = "generic", config: SearchConfig | None = None,
              max_degree: int = 12) -> SearchState:
    if mode not in MODES:
        raise UsageError(f"mode must be one of {MODES}")
    if d < 1:
        raise UsageError("d must be at least 1")
    state = SearchState(d, mode, config or SearchConfig())
    _init_lanes(state, max_degree)
    return state


def _init_lanes(state: SearchState, max_degree: int):
    cfg = state.config
    M = _max_block(state.d, max_degree) + cfg.slack
    state._lanes = [Lane(PointSet(state.d, PRIMES[k], M, cfg.seed + k)) for k in range(2)]


def _degree_one(state: SearchState):
    d = state.d
    rec = GeneratorRecord("t", 1, d, {"op": "form"}, None, [], recipe_d=d)
    semi = basic_form(d)
    rec.zform = semi.zform
    _add_generator(state, rec, semi, [lane.points.basic_form() for lane in state._lanes])
    state.rows.append(delta(1, dim_covariants(d, 1), 0, 0))
    state.certificates.append({"degree": 1, "products": "none", "spanning": "trivial"})


def step(state: SearchState) -> DimensionRow:
    """Extend the state by one degree."""
    i = state.degree + 1
    if i == 1:
        _degree_one(state)
        return state.rows[-1]
    d = state.d
    products = enumerate_products(state, i)
    sigma = _check_sigma(state, i, products)
    blocks = _product_blocks(state, i, products)
    prod_rank = sum(b.rank for b in blocks.values())
    dim_S = sigma - prod_rank
    cert = {"degree": i}
    # the exact tier needs X-forms, which exist only when Z-forms are kept
    exact_ok = all(s is not None for s in state._semi)
    if i <= state.config.exact_max_degree and products and exact_ok:
        syz = syzygy_space(state, i, products)
        if syz.dim != dim_S:
            raise SearchError(f"degree {i}: modular syzygy count {dim_S} but exact {syz.dim}")
        state.syzygies[i] = syz
        cert["products"] = "exact"
    else:
        cert["products"] = "modular-2p" if products else "none"
    row = delta(i, dim_covariants(d, i), sigma, dim_S)
    need_total = sum(b.dim - b.rank for b in blocks.values())
    if need_total != row.delta:
        raise PipelineInconsistency(f"degree {i}: block deficiencies {need_total} != delta {row.delta}")

    chosen: list[Candidate] = []
    flags: dict[tuple, list[str]] = {}
    if state.mode == "paper" and d == 8:
        recipes, notes = _recipe_candidates(state, i)
        for n in notes:
            log.info("degree %d: %s", i, n)
        got, _ = select_irreducible(state, i, blocks, recipes)
        for c in recipes:
            if c not in got:
                log.info("degree %d: recipe %s does not enlarge the span", i, c.name)
        chosen.extend(got)
        for c in got:
            if c.note:
                flags[c.key] = ["recipe-corrected"]
    remaining = {w: b.dim - b.echelons[0].rank for w, b in blocks.items()}
    if any(v > 0 for v in remaining.values()):
        wanted = {w for w, v in remaining.items() if v > 0}
        got, short = select_irreducible(state, i, blocks,
                                        candidate_semitransvectants(state, i, weights=wanted))
        if short:
            log.info("degree %d: widening the r-range for weights %s", i, sorted(short))
            more, short = select_irreducible(
                state, i, blocks, candidate_semitransvectants(state, i, widen=True, weights=set(short)))
            got += more
            for c in more:
                flags[c.key] = ["widened-r-range"]
        if short:
            raise SearchError(f"degree {i}: span defect {short} (weight: missing dimension)")
        if state.mode == "paper" and d == 8:
            for c in got:
                flags.setdefault(c.key, []).append("generic-fill")
        chosen.extend(got)
    if len(chosen) != row.delta:
        raise SearchError(f"degree {i}: accepted {len(chosen)} generators, expected {row.delta}")

    # records, in acceptance order within the degree
    counter = 0
    for c in chosen:
        counter += 1
        name = c.name or _systematic_name(state, i, counter)
        order = d + (d * (i - 1) - 2 * c.product.weight) - 2 * c.r
        seqs = []
        for lane in state._lanes:
            W = lane.full_of_product(c.product.indices)
            seqs.append(lane.points.transvectant(lane.seqs[0], W, c.r))
        if seqs[0].shape[0] != order + 1:
            raise PipelineInconsistency("order law violated by a numeric transvectant")
        semi = None
        zform = None
        if state.config.zforms:
            semi = _exact_semi(state, c, i)
            if semi.order != order or semi.degree != i:
                raise PipelineInconsistency(f"{name}: grading of the exact form disagrees")
            for lane, s in zip(state._lanes, seqs):
                if not _proportional(lane.points.eval_zform(semi.zform), s[0], lane.points.p):
                    raise PipelineInconsistency(f"{name}: exact form and numeric value disagree")
            semi.name = name
            zform = semi.zform
        rec = GeneratorRecord(name, i, order, _recipe_json(state, c), zform,
                              flags.get(c.key, []), recipe_d=d)
        _add_generator(state, rec, semi, seqs)
    cert["spanning"] = "modular-full-rank"
    state.rows.append(row)
    state.certificates.append(cert)
    return row


def _systematic_name(state: SearchState, i: int, k: int) -> str:
    base = f"g{i}_{k}"
    taken = set(state.names)
    while base in taken:
        k += 1
        base = f"g{i}_{k}"
    return base


def run_search(d: int, max_degree: int, mode: str = "generic",
               config: SearchConfig | None = None, state: SearchState | None = None,
               checkpoint: str | None = None, progress=None) -> SearchState:
    """Run (or continue) the search through ``max_degree``."""
    if state is None:
        state = new_state(d, mode, config, max_degree)
    elif state._lanes[0].points.M < _max_block(d, max_degree) + 1:
        _rebuild_lanes(state, max_degree)
    while state.degree < max_degree:
        try:
            row = step(state)
        except (SearchError, PipelineInconsistency) as exc:
            raise type(exc)(f"[degree {state.degree + 1}] {exc}") from exc
        if progress:
            progress(state, row)
        if checkpoint:
            save_state(state, checkpoint)
    return state


# ---------------------------------------------------------------------------------------
# persistence

def save_state(state: SearchState, path: str) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    text = state.dumps()
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".covgen-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_state(path: str, config: SearchConfig | None = None, max_degree: int | None = None
               ) -> SearchState:
    """Load a checkpoint and rebuild numeric images of every generator from its recipe."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise CheckpointError(f"{path}: expected schema {SCHEMA!r}, found {data.get('schema') if isinstance(data, dict) else None!r}")
    for key in ("d", "mode", "config", "rows", "generators", "certificates"):
        if key not in data:
            raise CheckpointError(f"{path}: missing field {key!r}")
    try:
        d = int(data["d"])
        stored = data["config"]
        cfg = config or SearchConfig()
        cfg.exact_max_degree = int(stored["exact_max_degree"])
        cfg.direct_check_max_degree = int(stored["direct_check_max_degree"])
        cfg.seed = int(stored["seed"])
        cfg.zforms = bool(stored["zforms"])
        state = SearchState(d, data["mode"], cfg)
        state.rows = [DimensionRow.from_json(r) for r in data["rows"]]
        state.certificates = list(data["certificates"])
        records = [GeneratorRecord.from_json(g, d) for g in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"{path}: malformed field: {exc!r}") from None
    if [r.i for r in state.rows] != list(range(1, len(state.rows) + 1)):
        raise CheckpointError(f"{path}: rows are not consecutive degrees from 1")
    counts = Counter(g.degree for g in records)
    for r in state.rows:
        if counts.get(r.i, 0) != r.delta:
            raise CheckpointError(f"{path}: degree {r.i} lists {counts.get(r.i, 0)} generators, "
                                  f"delta is {r.delta}")
    top = max(max_degree or 0, state.degree + 1)
    _init_lanes(state, top)
    try:
        _replay(state, records)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CheckpointError):
            raise
        raise CheckpointError(f"{path}: cannot replay recipes: {exc!r}") from None
    return state


def _replay(state: SearchState, records: list[GeneratorRecord]):
    d = state.d
    index = {}
    for rec in records:
        if rec.recipe.get("op") == "form":
            seqs = [lane.points.basic_form() for lane in state._lanes]
            semi = basic_form(d)
        else:
            try:
                idx = tuple(sorted(k for n, e in rec.recipe["g"] for k in [index[n]] * int(e)))
            except KeyError as exc:
                raise CheckpointError(f"recipe of {rec.name} refers to unknown {exc}") from None
            r = int(rec.recipe["r"])
            seqs = []
            for lane in state._lanes:
                W = lane.full_of_product(idx)
                seqs.append(lane.points.transvectant(lane.seqs[0], W, r))
            if seqs[0].shape[0] != rec.order + 1:
                raise CheckpointError(f"{rec.name}: recipe order differs from the stored order")
            semi = SemiInvariant(rec.zform, rec.name) if rec.zform is not None else None
            if semi is not None:
                lane = state._lanes[0]
                if not _proportional(lane.points.eval_zform(rec.zform), seqs[0][0], lane.points.p):
                    raise CheckpointError(f"{rec.name}: stored form does not match its recipe")
        index[rec.name] = len(state.generators)
        _add_generator(state, rec, semi, seqs)


def _rebuild_lanes(state: SearchState, max_degree: int):
    records = list(state.generators)
    semis = list(state._semi)
    state.generators, state._semi = [], []
    _init_lanes(state, max_degree)
    _replay(state, records)
    state._semi = semis


def iter_generators(state: SearchState) -> Iterator[tuple[GeneratorRecord, SemiInvariant | None]]:
    yield from zip(state.generators, state._semi)
