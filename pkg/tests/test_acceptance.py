"""Acceptance suite: one test per criterion, printing a PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. The random-model corpus is fully seeded (base seed printed below), so
every run checks the identical inputs.
"""

import functools
import math
import time
from itertools import combinations

import numpy as np
import pytest

from pathweights import (
    CustomScaling,
    Graph,
    Measure,
    Model,
    PathExplosionError,
    SymMatrix,
    betweenness,
    decompose,
    edge_measures,
    enumerate_paths,
    factorize,
    inflated_weight_explicit,
    inflation_factor,
    inflation_factor_identities,
    ips_fit,
    is_chordless,
    mtp2_sign_search,
    normalized_weight,
    partial_inflated_weight_explicit,
    partial_weight,
    rank_paths,
    subset_share,
    weight,
    weight_bounds,
)
from pathweights.datasets import men_network, women_network

from conftest import (
    brute_force_sign_search,
    oracle_weight_complement_form,
    random_decomposable_graph,
    random_model,
    random_tree_model,
    vertex_names,
)

BASE_SEED = 74620258
CORPUS_SIZE = 200
KINDS = (Measure.COVARIANCE, Measure.CORRELATION, Measure.INFLATED_CORRELATION)

REL_TOL = 1e-9
DECOMP_TOL = 1e-8


def close(a: float, b: float, rel: float = REL_TOL, abs_floor: float = 1e-12) -> bool:
    return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_floor)


def criterion(num: int, title: str):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                out = fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {num:02d} {title}: FAIL", flush=True)
                raise
            print(f"\nACCEPTANCE {num:02d} {title}: PASS", flush=True)
            return out

        return wrapper

    return deco


@pytest.fixture(scope="module")
def corpus():
    """200 random sparse PD models, p in 4..10, edge density 0.2-0.6."""
    print(f"\ncorpus: numpy default_rng seeds {BASE_SEED}+i for i in 0..{CORPUS_SIZE - 1}")
    models = []
    for i in range(CORPUS_SIZE):
        rng = np.random.default_rng(BASE_SEED + i)
        p = int(rng.integers(4, 11))
        density = float(rng.uniform(0.2, 0.6))
        models.append(random_model(rng, p, density))
    return models


def connected_pairs(m):
    comp_of = {}
    for i, comp in enumerate(m.graph.components()):
        for v in comp:
            comp_of[v] = i
    return [(x, y) for x, y in combinations(m.vertices, 2) if comp_of[x] == comp_of[y]]


def some_path(rng, m):
    for _ in range(12):
        pair = connected_pairs(m)
        if not pair:
            return None
        x, y = pair[int(rng.integers(0, len(pair)))]
        paths = enumerate_paths(m.graph, x, y)
        if paths:
            return paths[int(rng.integers(0, len(paths)))]
    return None


# -- criterion 1: decomposition identity -------------------------------------------


@criterion(1, "decomposition identity, every pair and measure, 200 models")
def test_c01_decomposition_identity(corpus):
    start = time.monotonic()
    pairs_checked = 0
    for i, m in enumerate(corpus):
        rng = np.random.default_rng(BASE_SEED ^ (0x10000 + i))
        delta = CustomScaling(dict(zip(
            m.vertices,
            rng.uniform(0.3, 2.0, size=len(m.vertices))
            * rng.choice([-1.0, 1.0], size=len(m.vertices)),
        )))
        for x, y in combinations(m.vertices, 2):
            for kind in (*KINDS, delta):
                report = decompose(m, x, y, kind=kind)
                assert abs(report.residual) <= DECOMP_TOL * max(1.0, abs(report.target)), (
                    f"model {i}, pair ({x},{y}), kind {kind}: residual {report.residual}"
                )
                pairs_checked += 1
    elapsed = time.monotonic() - start
    print(f"  {pairs_checked} decompositions in {elapsed:.1f}s")
    assert elapsed <= 60.0


# -- criterion 2: partial decomposition --------------------------------------------


@criterion(2, "partial decomposition on random restriction sets")
def test_c02_partial_decomposition(corpus):
    for i, m in enumerate(corpus):
        rng = np.random.default_rng(BASE_SEED ^ (0x20000 + i))
        pairs = connected_pairs(m)
        if not pairs:
            continue
        for _ in range(3):
            x, y = pairs[int(rng.integers(0, len(pairs)))]
            a = {x, y} | {v for v in m.vertices if rng.random() < 0.6}
            for kind in KINDS:
                report = decompose(m, x, y, kind=kind, restrict=a)
                assert abs(report.residual) <= DECOMP_TOL * max(1.0, abs(report.target)), (
                    f"model {i}, pair ({x},{y}), A={sorted(a)}: residual {report.residual}"
                )


# -- criterion 3: factorization suite -----------------------------------------------


@criterion(3, "factorization suite (general, chordless, unique-path)")
def test_c03_factorization_suite(corpus):
    zero_tol = 1e-12
    for i, m in enumerate(corpus):
        rng = np.random.default_rng(BASE_SEED ^ (0x30000 + i))
        for _ in range(4):
            p = some_path(rng, m)
            if p is None:
                break
            extra = {v for v in m.vertices if v not in p.vertex_set and rng.random() < 0.5}
            a = m.graph.require_vertices(set(p.vertex_set) | extra)

            # general factorization with a random conditioning set
            for kind in KINDS:
                fb = factorize(m, p, a, kind)
                assert close(fb.weight, fb.reconstructed_weight())
                if abs(fb.weight) > zero_tol and abs(fb.partial_weight) > zero_tol:
                    assert math.copysign(1, fb.weight) == math.copysign(1, fb.partial_weight)
                if kind is not Measure.CORRELATION:
                    assert abs(fb.weight) >= abs(fb.partial_weight) * (1 - 1e-12)

            # smallest conditioning set (A = path vertices) and monotonicity
            w_min = abs(partial_weight(m, p))
            w_mid = abs(partial_weight(m, p, a))
            w_full = abs(weight(m, p))
            assert w_min <= w_mid * (1 + 1e-10) <= w_full * (1 + 1e-10) * (1 + 1e-10)
            fb = factorize(m, p)
            assert close(fb.weight, fb.partial_weight * fb.inflation)

            # explicit inflated-correlation forms, both routes
            assert close(inflated_weight_explicit(m, p),
                         weight(m, p, Measure.INFLATED_CORRELATION))
            assert close(partial_inflated_weight_explicit(m, p),
                         partial_weight(m, p, kind=Measure.INFLATED_CORRELATION))

            # chordless specialization: the partial weight is the conditional entry
            if is_chordless(m.graph, p):
                pset = m.graph.require_vertices(p.vertex_set)
                cond_cor = m.conditional_correlation(pset)
                fc = factorize(m, p, kind=Measure.CORRELATION)
                assert close(fc.partial_weight, cond_cor.entry(p.x, p.y))
                cond_inf = m.conditional_inflated_correlation(pset)
                fi = factorize(m, p, kind=Measure.INFLATED_CORRELATION)
                assert close(fi.partial_weight, cond_inf.entry(p.x, p.y))
                assert close(fi.weight, cond_inf.entry(p.x, p.y) * fi.inflation)

    # unique-path specialization on trees: the weight is the plain matrix entry
    for j in range(30):
        rng = np.random.default_rng(BASE_SEED ^ (0x31000 + j))
        m = random_tree_model(rng, int(rng.integers(3, 10)))
        x, y = (str(v) for v in rng.choice(m.vertices, size=2, replace=False))
        (p,) = enumerate_paths(m.graph, x, y)
        assert close(weight(m, p), m.sigma.entry(x, y))
        assert close(weight(m, p, Measure.CORRELATION), m.omega.entry(x, y))
        assert close(weight(m, p, Measure.INFLATED_CORRELATION), m.inflated.entry(x, y))
        fb = factorize(m, p)
        assert close(m.sigma.entry(x, y), fb.partial_weight * fb.inflation)
        fc = factorize(m, p, kind=Measure.CORRELATION)
        assert close(m.omega.entry(x, y),
                     fc.partial_weight * fc.inflation / fc.endpoint_inflation)
        fi = factorize(m, p, kind=Measure.INFLATED_CORRELATION)
        assert close(m.inflated.entry(x, y), fi.partial_weight * fi.inflation)


# -- criterion 4: inflation identities and inflated-correlation properties ------------


@criterion(4, "inflation-factor identity triple and inflated determinant")
def test_c04_inflation_identities(corpus):
    for i, m in enumerate(corpus):
        rng = np.random.default_rng(BASE_SEED ^ (0x40000 + i))
        labels = list(m.vertices)
        rng.shuffle(labels)
        cut = int(rng.integers(1, len(labels)))
        keep = int(rng.integers(cut + 1, len(labels) + 1))
        ident = inflation_factor_identities(m, labels[:cut], labels[cut:keep])
        vals = ident.values()
        for v in vals[1:]:
            assert close(v, vals[0])
        # complement case carries the concentration route as a fourth value
        ident = inflation_factor_identities(m, labels[:cut])
        vals = ident.values()
        assert len(vals) == 4
        for v in vals[1:]:
            assert close(v, vals[0])

        det = m.inflated.det()
        assert close(det, m.sigma.det() / np.prod(1.0 / m.kappa.diagonal()))
        assert det >= 1.0 - 1e-12
        for v in m.vertices:
            assert close(m.inflated.entry(v, v), inflation_factor(m, [v]))


# -- criterion 5: scale equivariance -----------------------------------------------------


@criterion(5, "scale equivariance of weights and betweenness")
def test_c05_scale_equivariance(corpus):
    for i, m in enumerate(corpus):
        rng = np.random.default_rng(BASE_SEED ^ (0x50000 + i))
        p = some_path(rng, m)
        if p is None:
            continue
        base = weight(m, p)
        base_table = betweenness(m)
        pos = {v: k for k, v in enumerate(m.vertices)}
        for j in range(50):
            d = rng.uniform(0.2, 3.0, size=len(m.vertices)) * rng.choice(
                [-1.0, 1.0], size=len(m.vertices)
            )
            expected = d[pos[p.x]] * d[pos[p.y]] * base
            via_custom = weight(m, p, CustomScaling(dict(zip(m.vertices, d))))
            assert close(via_custom, expected)
            if j < 3:
                scaled = Model.from_sigma(
                    m.graph, SymMatrix(m.vertices, m.sigma.values * np.outer(d, d))
                )
                # independent evaluation on the congruence-scaled model
                assert close(weight(scaled, p), expected)
                for r_base, r_scaled in zip(base_table.rows, betweenness(scaled).rows):
                    assert abs(r_base.betweenness - r_scaled.betweenness) <= 1e-10


# -- criterion 6: bounds -------------------------------------------------------------------


@criterion(6, "weight bounds and normalized weight range")
def test_c06_bounds(corpus):
    for i, m in enumerate(corpus):
        rng = np.random.default_rng(BASE_SEED ^ (0x60000 + i))
        delta = CustomScaling(dict(zip(
            m.vertices, rng.uniform(0.3, 2.0, size=len(m.vertices)))))
        det_inflated = m.inflated.det()
        for x, y in connected_pairs(m):
            for p in enumerate_paths(m.graph, x, y):
                phi = normalized_weight(m, p)
                assert -1.0 <= phi <= 1.0
                for kind in (*KINDS, delta):
                    lo, hi = weight_bounds(m, p, kind)
                    w = weight(m, p, kind)
                    assert lo <= w <= hi or abs(w) <= hi * (1 + 1e-12)
                w_inf = weight(m, p, Measure.INFLATED_CORRELATION)
                assert abs(w_inf) <= det_inflated * (1 + 1e-12)
                assert close(w_inf, phi * det_inflated)


# -- criterion 7: dietary network reproduction ------------------------------------------------

# published two-decimal values: partial correlations and networked inflated
# partial correlations per edge, betweenness (raw and normalized) per vertex
WOMEN_NIPC = {
    ("cooked_vegetables", "red_meat"): 0.16,
    ("cooked_vegetables", "sauce"): 0.18,
    ("cooked_vegetables", "mushrooms"): 0.23,
    ("cabbage", "cooked_vegetables"): 0.29,
    ("cooked_vegetables", "potatoes"): 0.23,
    ("cooked_vegetables", "legumes"): 0.23,
    ("refined_bread", "whole_bread"): -0.45,
    ("processed_meat", "refined_bread"): 0.23,
    ("processed_meat", "red_meat"): 0.46,
    ("legumes", "red_meat"): 0.11,
    ("fried_potatoes", "red_meat"): 0.09,
    ("poultry", "red_meat"): 0.42,
    ("red_meat", "sauce"): 0.29,
    ("potatoes", "red_meat"): 0.28,
    ("cabbage", "potatoes"): 0.17,
    ("legumes", "potatoes"): 0.13,
    ("legumes", "soup"): 0.23,
}
MEN_NIPC = {
    ("cooked_vegetables", "red_meat"): 0.19,
    ("cooked_vegetables", "sauce"): 0.21,
    ("cooked_vegetables", "mushrooms"): 0.28,
    ("cabbage", "cooked_vegetables"): 0.39,
    ("cooked_vegetables", "potatoes"): 0.19,
    ("cooked_vegetables", "legumes"): 0.17,
    ("refined_bread", "whole_bread"): -0.40,
    ("processed_meat", "refined_bread"): 0.26,
    ("processed_meat", "red_meat"): 0.37,
    ("poultry", "red_meat"): 0.39,
    ("red_meat", "sauce"): 0.33,
    ("potatoes", "red_meat"): 0.31,
    ("cabbage", "potatoes"): 0.19,
    ("legumes", "soup"): 0.30,
}
WOMEN_BETWEENNESS = {
    "red_meat": (45.63, 1.00),
    "cooked_vegetables": (24.35, 0.53),
    "processed_meat": (20.00, 0.44),
    "legumes": (13.53, 0.30),
    "potatoes": (11.72, 0.26),
    "refined_bread": (11.00, 0.24),
    "sauce": (3.35, 0.07),
    "cabbage": (1.23, 0.03),
    "mushrooms": (0.00, 0.00),
    "poultry": (0.00, 0.00),
    "soup": (0.00, 0.00),
    "whole_bread": (0.00, 0.00),
    "fried_potatoes": (0.00, 0.00),
}
MEN_BETWEENNESS = {
    "red_meat": (33.72, 1.00),
    "cooked_vegetables": (31.94, 0.95),
    "processed_meat": (18.00, 0.53),
    "legumes": (10.00, 0.30),
    "potatoes": (7.44, 0.22),
    "refined_bread": (10.00, 0.30),
    "sauce": (4.80, 0.14),
    "cabbage": (2.19, 0.07),
    "mushrooms": (0.00, 0.00),
    "poultry": (0.00, 0.00),
    "soup": (0.00, 0.00),
    "whole_bread": (0.00, 0.00),
}
WOMEN_ZERO_SET = {"mushrooms", "poultry", "soup", "whole_bread", "fried_potatoes"}
MEN_ZERO_SET = {"mushrooms", "poultry", "soup", "whole_bread"}


@criterion(7, "dietary-network reproduction (NIPC, betweenness, shares, ranking)")
def test_c07_dietary_reproduction():
    for name, model, nipc_table, b_table, zero_set in (
        ("women", women_network(), WOMEN_NIPC, WOMEN_BETWEENNESS, WOMEN_ZERO_SET),
        ("men", men_network(), MEN_NIPC, MEN_BETWEENNESS, MEN_ZERO_SET),
    ):
        start = time.monotonic()

        assert set(nipc_table) == set(model.graph.sorted_edges())
        for edge, expected in nipc_table.items():
            em = edge_measures(model, edge)
            assert abs(em.nipc - expected) <= 0.02, (name, edge, em.nipc, expected)

        table = betweenness(model)
        for v, (b_expected, bt_expected) in b_table.items():
            row = table.row(v)
            assert abs(row.betweenness - b_expected) <= 1.5, (name, v, row.betweenness)
            assert abs(row.normalized - bt_expected) <= 0.05, (name, v, row.normalized)
        top = max(table.rows, key=lambda r: r.betweenness)
        assert top.vertex == "red_meat", name
        assert {r.vertex for r in table.rows if r.betweenness == 0.0} == zero_set, name

        ranked = rank_paths(model, 3)
        best = ranked[0][0].sequence
        assert set(best) == {"processed_meat", "red_meat", "poultry"}, name
        assert best[1] == "red_meat", name

        assert mtp2_sign_search(model) is not None, name

        elapsed = time.monotonic() - start
        assert elapsed <= 5.0, (name, elapsed)

    women = women_network()
    report = decompose(women, "soup", "cooked_vegetables", kind=Measure.INFLATED_CORRELATION)
    assert len(report.entries) == 9
    direct = ("cooked_vegetables", "legumes", "soup")
    share = subset_share(report, lambda p: p.sequence == direct)
    assert abs(share - 0.814) <= 0.01, share

    men = men_network()
    men_report = decompose(men, "soup", "cooked_vegetables", kind=Measure.INFLATED_CORRELATION)
    assert len(men_report.entries) == 1  # single path through legumes


# -- criterion 8: oracle equivalence -----------------------------------------------------------


@criterion(8, "oracle equivalence: determinant forms and exhaustive sign search")
def test_c08_oracle_equivalence(corpus):
    for i, m in enumerate(corpus[::4]):
        rng = np.random.default_rng(BASE_SEED ^ (0x80000 + i))
        pairs = connected_pairs(m)
        if not pairs:
            continue
        for _ in range(3):
            x, y = pairs[int(rng.integers(0, len(pairs)))]
            for p in enumerate_paths(m.graph, x, y):
                assert close(weight(m, p), oracle_weight_complement_form(m, p.sequence))

    # sign search versus exhaustive enumeration, up to 12 variables
    for j in range(40):
        rng = np.random.default_rng(BASE_SEED ^ (0x81000 + j))
        p = int(rng.integers(2, 13))
        m = random_model(rng, p, float(rng.uniform(0.2, 0.8)))
        fast = mtp2_sign_search(m)
        slow = brute_force_sign_search(m)
        assert (fast is None) == (slow is None), j
        if fast is not None:
            for u, v in m.graph.edges:
                assert fast.delta[u] * fast.delta[v] * m.partial_corr.entry(u, v) >= -1e-10


# -- criterion 9: iterative proportional scaling -------------------------------------------------


@criterion(9, "proportional-scaling fit reaches its fixed point")
def test_c09_ips_fit():
    rng = np.random.default_rng(BASE_SEED ^ 0x90000)

    def sample_cov(p):
        a = rng.normal(size=(p, 2 * p))
        s = a @ a.T / (2 * p) + 0.25 * np.eye(p)
        return SymMatrix(vertex_names(p), (s + s.T) / 2)

    # complete graph: unconstrained MLE is the sample itself
    p = 6
    names = vertex_names(p)
    complete = Graph(names, [(u, v) for a, u in enumerate(names) for v in names[a + 1:]])
    s = sample_cov(p)
    fitted = ips_fit(s, complete)
    assert np.abs(fitted.sigma.values - s.values).max() <= 1e-9

    # edgeless graph: independence model keeps only the diagonal
    s = sample_cov(5)
    fitted = ips_fit(s, Graph(vertex_names(5)))
    assert np.abs(fitted.sigma.values - np.diag(np.diagonal(s.values))).max() <= 1e-9

    # random decomposable graphs: moment match on constrained positions
    for _ in range(20):
        p = int(rng.integers(3, 10))
        g = random_decomposable_graph(rng, p)
        s = sample_cov(p)
        fitted = ips_fit(s, g)  # default tol 1e-9, max_iter 10000
        for v in g.vertices:
            assert abs(fitted.sigma.entry(v, v) - s.entry(v, v)) <= 1e-8
        for u, v in g.edges:
            assert abs(fitted.sigma.entry(u, v) - s.entry(u, v)) <= 1e-8
        k = fitted.kappa.values
        pos = {v: idx for idx, v in enumerate(g.vertices)}
        for a, u in enumerate(g.vertices):
            for v in g.vertices[a + 1:]:
                if not g.has_edge(u, v):
                    assert abs(k[pos[u], pos[v]]) <= 1e-8


# -- criterion 10: path enumeration -------------------------------------------------------------


@criterion(10, "path enumeration counts and deterministic explosion")
def test_c10_path_enumeration():
    names = ["a", "b", "c", "d"]
    k4 = Graph(names, [(u, v) for i, u in enumerate(names) for v in names[i + 1:]])
    for x, y in combinations(names, 2):
        assert len(enumerate_paths(k4, x, y)) == 5

    big = [f"n{i}" for i in range(8)]
    k8 = Graph(big, [(u, v) for i, u in enumerate(big) for v in big[i + 1:]])
    raised = []
    for _ in range(2):
        with pytest.raises(PathExplosionError) as err:
            enumerate_paths(k8, "n0", "n1", cap=1000)
        raised.append((err.value.cap, err.value.found))
    assert raised[0] == raised[1] == (1000, 1001)
