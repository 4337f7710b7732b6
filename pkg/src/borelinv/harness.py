"""End-to-end verification: Borel basis (theorem), GL and parabolic
candidates (conjectures), and the identity suite for the delta calculus."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor

from . import invariants as inv
from .basis import (basis_closed_form, basis_inductive, basis_size, enumerate_basis,
                    evaluate_node, gl_candidate_basis, node_degree, node_text, parse_composition,
                    parabolic_candidate_basis, phi_pow, smallest_monomial)
from .gf import FieldParams, parse_field
from .groups import (DEFAULT_MAX_CELLS, GroupSpec, SizeBound, generators, invariant_dims,
                     is_invariant, orbit_count, rank_of_family)
from .mpoly import MPoly, NotPolynomial, apply_matrix
from .report import PASS, SKIPPED, VerifyReport
from .series import (c_alpha_m, c_alpha_m_abbreviated, c_nm_gl, f_nm, first_mismatch,
                     flag_count, hilbert_of_degrees, hilbert_of_dims, hilbert_of_family,
                     summand_decomposition)

BOREL_GRID = ([(2, m, n) for m in range(4) for n in range(1, 4)]
              + [(3, m, n) for m in range(3) for n in range(1, 3)]
              + [(4, 1, 1), (4, 1, 2)])
CONJECTURE_GRID = [(2, m, n) for m in range(1, 4) for n in range(1, 4)]


def as_field(q) -> FieldParams:
    """Accept a FieldParams, a "p^e" string or an integer prime power."""
    if isinstance(q, FieldParams):
        return q
    if isinstance(q, str):
        return parse_field(q)
    return parse_field(str(int(q)))


def _case(F, m, n, group, alpha=()):
    return {"p": F.p, "e": F.e, "q": F.q, "m": m, "n": n, "group": group,
            "alpha": list(alpha)}


def _degree_polys(polys):
    by = {}
    for f in polys:
        if f:
            by.setdefault(f.homogeneous_degree(), []).append(f)
    return by


def _span_counterexample(F, n, d, family, oracle_deg):
    """A kernel vector of the oracle in degree d outside the span of ``family``."""
    base = list(family)
    r0 = rank_of_family(base)[0]
    for g in oracle_deg.polys(F, n):
        if rank_of_family(base + [g])[0] > r0:
            return g.to_text()
    return None


def _family_checks(rep, spec, m, polys, expected, max_cells, cache, formal_degrees=None):
    """Invariance, independence, spanning and series checks shared by every pipeline."""
    F, n = spec.field, spec.n
    cap = F.q ** m
    polys = [f.truncate(cap) for f in polys]
    zero = [i for i, f in enumerate(polys) if not f]
    rep.add("nonzero", not zero, {"indices": zero[:10]} if zero else None)
    live = [f for f in polys if f]
    inhom = [f.to_text() for f in live if not f.is_homogeneous()]
    if inhom:
        rep.add("homogeneous", False, {"poly": inhom[0]})
        return
    bad = [f.to_text() for f in live if not is_invariant(f, spec, m)]
    rep.add("invariance", not bad, {"poly": bad[0]} if bad else None,
            f"{len(live) - len(bad)}/{len(live)} invariant")
    total, ranks = rank_of_family(live)
    by_deg = _degree_polys(live)
    dep = sorted(d for d, fs in by_deg.items() if ranks.get(d, 0) < len(fs))
    rep.add("independence", total == len(polys),
            {"degree": dep[0]} if dep else None, f"rank {total} of {len(polys)}")
    computed = hilbert_of_family(live)
    rep.series["computed"] = computed.to_text()
    rep.series["expected"] = expected.to_text()
    try:
        oracle = invariant_dims(spec, m, max_cells, cache)
    except SizeBound as exc:
        rep.skip("spanning", str(exc))
        oracle = None
    if oracle is not None:
        dims = {d: v.dim for d, v in oracle.items() if v.dim}
        rep.series["oracle"] = hilbert_of_dims(dims).to_text()
        short = sorted(d for d, k in dims.items() if ranks.get(d, 0) < k)
        witness = None
        if short:
            d = short[0]
            witness = {"degree": d,
                       "kernel_vector": _span_counterexample(F, n, d, by_deg.get(d, []), oracle[d])}
        ok = not short and all(ranks.get(d, 0) == dims.get(d, 0) for d in set(ranks) | set(dims))
        rep.add("spanning", ok, witness)
        mm = first_mismatch(hilbert_of_dims(dims), expected)
        rep.add("oracle_series", mm is None, {"degree": mm} if mm is not None else None)
    mm = first_mismatch(computed, expected)
    rep.add("hilbert", mm is None, {"degree": mm} if mm is not None else None)
    if formal_degrees is not None:
        mm = first_mismatch(hilbert_of_degrees(formal_degrees), expected)
        rep.add("formal_degrees", mm is None, {"degree": mm} if mm is not None else None)


def verify_borel(q, m: int, n: int, max_cells: int = DEFAULT_MAX_CELLS, cache=None,
                 orbits: bool = True) -> VerifyReport:
    F = as_field(q)
    q = F.q
    t0 = time.perf_counter()
    rep = VerifyReport(_case(F, m, n, "borel", (1,) * n))
    spec = GroupSpec("borel", n, F)
    ind, closed = basis_inductive(q, m, n), basis_closed_form(q, m, n)
    rep.add("enumeration", ind == closed and len(closed) == basis_size(q, m, n),
            None if ind == closed else {"difference": [str(y) for y in sorted(ind ^ closed)[:5]]},
            f"|B| = {len(closed)}")
    B = sorted(closed)
    values, failed = [], []
    for idx in B:
        try:
            values.append((idx, inv.evaluate_y(F, idx)))
        except NotPolynomial:
            failed.append(str(idx))
    rep.add("polynomiality", not failed, {"index": failed[0]} if failed else None)
    expected = c_alpha_m(q, m, (1,) * n)
    recursive = f_nm(n, m, q)
    _family_checks(rep, spec, m, [f for _, f in values], expected, max_cells, cache)
    mm = first_mismatch(expected, recursive)
    rep.add("recursion", mm is None, {"degree": mm} if mm is not None else None)
    rep.series["recursive"] = recursive.to_text()
    abbreviated = c_alpha_m_abbreviated(q, m, (1,) * n)
    rep.notes["abbreviated_multinomial_differs"] = abbreviated != expected

    cap = q ** m
    wrong, seen = [], set()
    for idx, f in values:
        pred = smallest_monomial(idx, q, m)
        got = f.truncate(cap)
        if not got or got.smallest_monomial() != pred or f.smallest_monomial() != pred:
            wrong.append({"index": str(idx), "predicted": list(pred)})
        seen.add(pred)
    distinct = len(seen) == len(values)
    rep.add("smallest_monomial", not wrong and distinct, wrong[0] if wrong else None,
            "pairwise distinct" if distinct else "repeated monomials")

    parts = summand_decomposition(q, m, n)
    bad = [list(b) for b, (got, exp) in parts.items() if got != exp]
    rep.add("summand", not bad, {"beta": bad[0]} if bad else None)

    flags = flag_count(q, m, n)
    rep.counts = {"basis": len(B), "flags": flags}
    if orbits:
        try:
            orb = orbit_count(spec, m, max_cells)
            rep.counts["orbits"] = orb
            rep.add("counting", orb == flags == len(B), None if orb == flags == len(B) else rep.counts)
        except SizeBound as exc:
            rep.add("counting", flags == len(B), None, f"orbits skipped: {exc}")
    else:
        rep.add("counting", flags == len(B), None if flags == len(B) else rep.counts)
    rep.timing = time.perf_counter() - t0
    return rep


def same_span(a, b) -> bool:
    """Equal spans in every degree."""
    ra, ra_deg = rank_of_family(a)
    rb, rb_deg = rank_of_family(b)
    ru, ru_deg = rank_of_family(list(a) + list(b))
    return ra_deg == rb_deg == ru_deg


def _evaluate_nodes(F, nodes):
    values, failed = [], []
    for node in nodes:
        try:
            values.append(evaluate_node(F, node))
        except NotPolynomial:
            failed.append(node_text(node))
    return values, failed


def verify_gl(q, m: int, n: int, max_cells: int = DEFAULT_MAX_CELLS, cache=None) -> VerifyReport:
    F = as_field(q)
    t0 = time.perf_counter()
    rep = VerifyReport(_case(F, m, n, "gl", (n,)), conjecture=True)
    cands = gl_candidate_basis(F.q, m, n)
    nodes = [c.node() for c in cands]
    values, failed = _evaluate_nodes(F, nodes)
    rep.add("polynomiality", not failed, {"candidate": failed[0]} if failed else None)
    expected = c_nm_gl(F.q, m, n)
    _family_checks(rep, GroupSpec("gl", n, F), m, values, expected, max_cells, cache,
                   [node_degree(x, F.q) for x in nodes])
    rep.counts = {"basis": len(cands)}
    rep.timing = time.perf_counter() - t0
    return rep


def _phi_frobenius(F, cands):
    """(Phi^s g)(0,..,0,x) = g(x)^{q^s} for the tail factors of the candidates."""
    seen = set()
    for c in cands:
        if c.s == 0 or c.g is None:
            continue
        g = c.g.node()
        if (g, c.s) in seen:
            continue
        seen.add((g, c.s))
        gv = evaluate_node(F, g)
        pv = evaluate_node(F, phi_pow(g, c.s))
        for i in range(c.s):
            pv = pv.substitute_zero(0).drop_var(0)
        target = gv
        for _ in range(c.s):
            target = target.qth_power()
        if pv != target:
            return node_text(g)
    return None


def verify_parabolic(q, m: int, alpha, max_cells: int = DEFAULT_MAX_CELLS,
                     cache=None) -> VerifyReport:
    F = as_field(q)
    alpha = parse_composition(alpha)
    n = sum(alpha)
    t0 = time.perf_counter()
    rep = VerifyReport(_case(F, m, n, "parabolic", alpha), conjecture=True)
    cands = parabolic_candidate_basis(F.q, m, alpha)
    nodes = [c.node() for c in cands]
    values, failed = _evaluate_nodes(F, nodes)
    rep.add("polynomiality", not failed, {"candidate": failed[0]} if failed else None)
    expected = c_alpha_m(F.q, m, alpha)
    _family_checks(rep, GroupSpec("parabolic", n, F, alpha), m, values, expected, max_cells,
                   cache, [node_degree(x, F.q) for x in nodes])
    try:
        bad = _phi_frobenius(F, cands)
        rep.add("phi_rule_frobenius", bad is None, {"tail": bad} if bad else None)
    except NotPolynomial as exc:
        rep.add("phi_rule_frobenius", False, {"error": str(exc)})
    cap = F.q ** m
    mine = [f.truncate(cap) for f in values]
    if alpha == (1,) * n:
        ref = [inv.evaluate_y(F, i).truncate(cap)
               for i in enumerate_basis(F.q, m, n, check=False)]
        rep.add("matches_borel_basis", same_span(mine, ref),
                detail="same span in every degree")
        rep.notes["identical_to_borel_values"] = sorted(f.to_text() for f in mine) == sorted(
            f.to_text() for f in ref)
    if alpha == (n,):
        ref = [f.truncate(cap) for f in
               _evaluate_nodes(F, [c.node() for c in gl_candidate_basis(F.q, m, n)])[0]]
        rep.add("matches_gl_candidates", sorted(f.to_text() for f in mine) == sorted(
            f.to_text() for f in ref))
    rep.counts = {"basis": len(cands)}
    rep.timing = time.perf_counter() - t0
    return rep


# -- identity suite ------------------------------------------------------------------

def random_poly(F: FieldParams, nvars: int, rng: random.Random, max_terms: int = 8,
                max_deg: int | None = None) -> MPoly:
    """Sparse polynomial with 1..max_terms terms of degree <= max_deg (default q^2)."""
    max_deg = F.q ** 2 if max_deg is None else max_deg
    if nvars == 0:
        return MPoly.const(F, 0, F.elem(F.to_coeffs(rng.randrange(1, F.q))))
    d = {}
    for _ in range(rng.randint(1, max_terms)):
        while True:
            exps = tuple(rng.randint(0, max_deg) for _ in range(nvars))
            if sum(exps) <= max_deg:
                break
        d[exps] = F.elem(F.to_coeffs(rng.randrange(1, F.q)))
    return MPoly.from_dict(F, nvars, d)


def _random_monomial(F, nvars, rng):
    exps = [rng.randint(0, F.q) for _ in range(nvars)]
    return MPoly.monomial(F, nvars, exps)


def check_iterated_delta(F, rng, rmax=2, hmax=2, bmax=3):
    """Closed form against h-fold delta on monomial inputs."""
    count = 0
    for r in range(rmax + 1):
        for h in range(1, hmax + 1):
            for b in range(1, bmax + 1):
                inputs = [MPoly.one(F, r), _random_monomial(F, r + 1, rng)]
                if r >= 1:
                    inputs.append(MPoly.var(F, r, 0, F.q - 1))
                for f in inputs:
                    if inv.delta_iter_closed(r, b, h, f) != inv.delta_pow(r + 1, b, h, f):
                        return False, {"r": r, "h": h, "b": b, "f": f.to_text()}, count
                    count += 1
    return True, None, count


def composite_grid(max_vars: int = 4):
    for r in (1, 2):
        for s in (0, 1, 2):
            for k in (1, 2):
                for h in (1, 2):
                    if r <= s + k and max(r, s + k) + h <= max_vars:
                        yield r, s, k, h


def check_composite(F, rng, max_vars=4, b_values=(1, 2)):
    count = 0
    for r, s, k, h in composite_grid(max_vars):
        for b in b_values:
            f = random_poly(F, s, rng, max_terms=3, max_deg=F.q)
            g = random_poly(F, r, rng, max_terms=3, max_deg=F.q)
            ok, w = inv.composite_delta_check(r, s, k, h, f, g, b)
            if not ok:
                return False, {"r": r, "s": s, "k": k, "h": h, "b": b,
                               "f": f.to_text(), "g": g.to_text()}, count
            count += 1
    return True, None, count


def check_delta_square(F, rng, smax=2, trials=10, b_values=(1, 2)):
    count = 0
    for s in range(smax + 1):
        for b in b_values:
            for _ in range(trials):
                f = random_poly(F, s, rng)
                out = inv.delta(s + 2, b, inv.delta(s + 1, b, f))
                if out:
                    return False, {"s": s, "b": b, "f": f.to_text()}, count
                count += 1
    return True, None, count


def grid_points(q: int, grid=None):
    grid = BOREL_GRID if grid is None else grid
    return [(m, n) for (qq, m, n) in grid if qq == q]


def check_phi_specialization(F, grid=None):
    """(Phi Y)(0, x_2..x_n) = Y(x_2..x_n)^q for Y in B_{m-1}(n-1)."""
    count = 0
    for m, n in grid_points(F.q, grid):
        if m < 1 or n < 2:
            continue
        for idx in enumerate_basis(F.q, m - 1, n - 1, check=False):
            y = inv.evaluate_y(F, idx)
            py = inv.evaluate_y(F, inv.phi(idx))
            if py.substitute_zero(0).drop_var(0) != y.qth_power():
                return False, {"index": str(idx)}, count
            count += 1
    return True, None, count


def _dickson_monomials(F, s, limit=4):
    out = [MPoly.one(F, s)]
    for i in range(s):
        for e in (1, 2):
            out.append(inv.dickson_power(F, s, i, e))
    if s >= 2:
        out.append(inv.dickson(F, s, 0) * inv.dickson(F, s, s - 1))
    return out[:limit + 1]


def check_gl_lift(F, nmax=3, mmax=2):
    """delta_{s+1}^{n-s} of Dickson monomials is GL_n-invariant modulo I."""
    count = 0
    for n in range(1, nmax + 1):
        spec = GroupSpec("gl", n, F)
        for m in range(1, mmax + 1):
            if (F.q ** m) ** n > 10 ** 4:
                continue
            for s in range(0, n + 1):
                for f in _dickson_monomials(F, s):
                    val = inv.rf_as_poly(inv.delta_pow(s + 1, m, n - s, f)) if n > s else f
                    if not is_invariant(val, spec, m):
                        return False, {"n": n, "m": m, "s": s, "f": f.to_text()}, count
                    count += 1
    return True, None, count


def check_lower_type(F, grid=None, max_cells=DEFAULT_MAX_CELLS, cache=None):
    """Lowest x_1-slice of an oracle invariant is a q-th power whose root is
    Borel-invariant one level down."""
    q = F.q
    count = 0
    for m, n in grid_points(q, grid):
        if m < 1 or n < 2:
            continue
        spec = GroupSpec("borel", n, F)
        sub = GroupSpec("borel", n - 1, F)
        oracle = invariant_dims(spec, m, max_cells, cache)
        for d, deg in oracle.items():
            for f in deg.polys(F, n):
                low, sl = f.lowest_in_var(0)
                if low >= q ** m - 1:
                    continue
                rest = MPoly(F, n, sl.terms)
                rest = MPoly.from_dict(F, n - 1, {e[1:]: F.elem(F.to_coeffs(c))
                                                  for e, c in rest.items()})
                if any(x % q for e, _ in rest.items() for x in e):
                    return False, {"m": m, "n": n, "degree": d, "poly": f.to_text()}, count
                root = MPoly.from_dict(F, n - 1, {tuple(x // q for x in e): F.elem(F.to_coeffs(c))
                                                  for e, c in rest.items()})
                if not is_invariant(root, sub, m - 1):
                    return False, {"m": m, "n": n, "degree": d, "root": root.to_text()}, count
                count += 1
    return True, None, count


def check_expansion(F, smax=2, hmax=2):
    for s in range(smax + 1):
        for h in range(hmax + 1):
            terms = inv.expand_v_product(F, s, h)
            if inv.v_product_from_terms(F, s, terms) != inv.v_product_direct(F, s, h):
                return False, {"s": s, "h": h}, 0
    return True, None, (smax + 1) * (hmax + 1)


def check_dickson_forms(F, kmax=3):
    for k in range(1, kmax + 1):
        for s in range(k):
            a = inv.dickson(F, k, s, "det")
            if a != inv.dickson(F, k, s, "fundamental") or a != inv.dickson(F, k, s, "product"):
                return False, {"k": k, "s": s}, 0
            for g in generators(GroupSpec("gl", k, F)):
                if apply_matrix(a, g) != a:
                    return False, {"k": k, "s": s, "not_invariant": True}, 0
    return True, None, kmax


def check_schur_forms(F, smax=3, box=2):
    from .basis import box_partitions
    count = 0
    for s in range(1, smax + 1):
        for lam in box_partitions(min(s, 2), box):
            lam = lam + (0,) * (s - len(lam))
            if inv.schur_s(F, lam, s) != inv.schur_inductive(F, lam, s):
                return False, {"s": s, "lambda": list(lam)}, count
            count += 1
    return True, None, count


IDENTITY_CHECKS = ("expansion", "dickson_forms", "schur_forms", "iterated_delta",
                   "composite_delta", "delta_square_zero", "phi_specialization",
                   "gl_lift", "lower_type")


def verify_identities(q, budget: int = 4, seed: int = 0, grid=None,
                      max_cells: int = DEFAULT_MAX_CELLS, cache=None,
                      only=None) -> VerifyReport:
    """Randomised and exhaustive-small checks of the delta calculus.  ``budget``
    bounds the variable count of the composite-delta grid."""
    F = as_field(q)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    rep = VerifyReport({"p": F.p, "e": F.e, "q": F.q, "group": "identities", "seed": seed,
                        "budget": budget})
    runs = {
        "expansion": lambda: check_expansion(F),
        "dickson_forms": lambda: check_dickson_forms(F),
        "schur_forms": lambda: check_schur_forms(F),
        "iterated_delta": lambda: check_iterated_delta(F, rng),
        "composite_delta": lambda: check_composite(F, rng, budget),
        "delta_square_zero": lambda: check_delta_square(F, rng),
        "phi_specialization": lambda: check_phi_specialization(F, grid),
        "gl_lift": lambda: check_gl_lift(F),
        "lower_type": lambda: check_lower_type(F, grid, max_cells, cache),
    }
    for name in IDENTITY_CHECKS:
        if only is not None and name not in only:
            continue
        ok, witness, count = runs[name]()
        rep.add(name, ok, witness, f"{count} cases")
    rep.timing = time.perf_counter() - t0
    return rep


# -- grids ---------------------------------------------------------------------------

def _run_point(args):
    kind, q, m, n, alpha, max_cells, cache_dir = args
    from .report import OracleCache
    cache = OracleCache(cache_dir) if cache_dir else None
    if kind == "borel":
        return verify_borel(q, m, n, max_cells, cache)
    if kind == "gl":
        return verify_gl(q, m, n, max_cells, cache)
    return verify_parabolic(q, m, alpha, max_cells, cache)


def run_grid(points, kind: str = "borel", workers: int = 1, max_cells=DEFAULT_MAX_CELLS,
             cache_dir=None) -> list:
    """Verify every point; ``points`` are (q, m, n) or, for parabolic, (q, m, alpha)."""
    jobs = []
    for pt in points:
        if kind == "parabolic":
            q, m, alpha = pt
            jobs.append((kind, q, m, sum(alpha), tuple(alpha), max_cells, cache_dir))
        else:
            q, m, n = pt
            jobs.append((kind, q, m, n, (), max_cells, cache_dir))
    if workers <= 1:
        return [_run_point(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point, jobs))


def summarize(reports) -> dict:
    return {"total": len(reports), "passed": sum(r.passed for r in reports),
            "failed": [r.case_label() for r in reports if not r.passed],
            "skipped_checks": sum(c.status == SKIPPED for r in reports for c in r.checks)}


__all__ = ["verify_borel", "verify_gl", "verify_parabolic", "verify_identities", "run_grid",
           "BOREL_GRID", "CONJECTURE_GRID", "as_field", "PASS"]
