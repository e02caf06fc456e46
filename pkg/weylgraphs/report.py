"""
Verification suite

Runs every structural and recognition claim the package can check on
concrete instances and collects the outcome as `key = value` lines (stable,
diffable; keys are listed in docs/REPORT-KEYS.md) plus a text rendering.
"""

import logging
import random
import time
from datetime import datetime
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from tabulate import tabulate

from . import metrics
from .errors import WeylGraphError
from .families import kneser, nonsingular_vectors, quadric_graph, symplectic_graph
from .graph import (CARTESIAN_PRODUCT, JOIN, LONG, SHORT, SHORT_ONLY, BichromaticGraph,
                    ContractedGraph, build_graph, combine, complete, components, cycle, double,
                    induced_subgraph, is_connected, relabel)
from .iso import are_isomorphic, automorphism_group, canonical_form, is_automorphism
from .permgroup import group_order
from .recognition import (OTHER, TWISTED_WF4, WF4, all_twists, alternating_long_count,
                          block_contraction, build_locally_b4, build_locally_f4,
                          classify_f4_candidate, f4_invariant_violations, is_completely_reduced,
                          is_cotriangular, is_locally_like_b4, is_locally_like_f4, local_profile,
                          long_neighbor_count, wf4, wf4_twisted)
from .roots import (combinatorial_weyl, commutation_agrees, is_closed_under_negation,
                    is_crystallographic, reflection_conjugation_action, root_system,
                    weyl_graph, weyl_group_order)

logger = logging.getLogger(__name__)

KV = 'kv'
TEXT = 'text'

# Wall-clock limit for the E8 identity and for the infinite-family builds
TIME_LIMIT_SECONDS = 60

CENSUS = (
    [('A', n, n * (n + 1) // 2, 0) for n in range(1, 9)]
    + [('B', n, n * n, n) for n in range(2, 7)]
    + [('C', n, n * n, n * (n - 1)) for n in range(2, 7)]
    + [('D', n, n * (n - 1), 0) for n in range(4, 7)]
    + [('E', 6, 36, 0), ('E', 7, 63, 0), ('E', 8, 120, 0), ('F', 4, 24, 12), ('G', 2, 6, 3)]
)


def format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float) and value == float('inf'):
        return 'inf'
    if isinstance(value, (tuple, list)):
        return ','.join(format_value(v) for v in value)
    if value is None:
        return 'none'
    return str(value)


def _weyl(label: str, rank: int) -> BichromaticGraph:
    return weyl_graph(root_system(label, rank))


def _product(*graphs: BichromaticGraph) -> BichromaticGraph:
    result = graphs[0]
    for G in graphs[1:]:
        result = combine(result, G, CARTESIAN_PRODUCT)
    return result


def subdivided_complete(n: int) -> BichromaticGraph:
    """K_n with every edge subdivided once"""
    edges = []
    for e, (i, j) in enumerate(combinations(range(n), 2)):
        edges += [(i, n + e), (j, n + e)]
    return build_graph(n + n * (n - 1) // 2, None, edges, name=f"S(K{n})")


def strong_star(leaves: int = 3) -> ContractedGraph:
    star = build_graph(leaves + 1, None, [(0, i) for i in range(1, leaves + 1)],
                       name=f"K1,{leaves}")
    return ContractedGraph.from_graph(star, star.edges())


class VerificationSuite:
    """
    Theorem verification suite

    Each step records `key = value` entries and named checks. A step that
    raises counts as one failed check; the remaining steps still run.
    """

    def __init__(self, seed: int = 0, relabel_rounds: int = 100, include_slow: bool = True):
        self.seed = seed
        self.relabel_rounds = relabel_rounds
        self.include_slow = include_slow
        self.entries: List[Tuple[str, str]] = []
        self.checks: List[Tuple[str, str, bool]] = []
        self.census_rows: List[list] = []
        self.f4_instances: Dict[str, BichromaticGraph] = {}
        # run-dependent values stay out of the key-value report
        self.started: Optional[str] = None
        self.timings: List[Tuple[str, float]] = []

    def record(self, key: str, value):
        self.entries.append((key, format_value(value)))

    def check(self, section: str, name: str, passed: bool, value=None):
        passed = bool(passed)
        self.checks.append((section, name, passed))
        self.record(f"{section}.{name}", value if value is not None else passed)
        metrics.record_check(f"{section}.{name}", passed)
        if not passed:
            logger.warning(f"Check failed: {section}.{name}")

    def check_time(self, section: str, name: str, seconds: float,
                   limit: float = TIME_LIMIT_SECONDS):
        self.timings.append((f"{section}.{name}", round(seconds, 2)))
        logger.info(f"{section}.{name} took {seconds:.1f}s (limit {limit}s)")
        self.check(section, f"{name}.within_time_limit", seconds < limit)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    def steps(self):
        return [
            ('census', self.run_census),
            ('iso', self.run_isomorphism_identities),
            ('local', self.run_local_structure),
            ('f4', self.run_f4_dichotomy),
            ('tight', self.run_tightness),
            ('family', self.run_infinite_families),
            ('b4', self.run_b4),
            ('bn', self.run_bn_structure),
            ('cotriangular', self.run_cotriangular),
            ('invariants', self.run_invariants),
            ('relabel', self.run_relabeling),
        ]

    def run(self) -> bool:
        started = time.perf_counter()
        self.started = datetime.now().isoformat(timespec='seconds')
        logger.info(f"Verification suite started at {self.started}")
        self.record('suite.seed', self.seed)
        self.record('suite.include_slow', self.include_slow)
        for section, step in self.steps():
            step_started = time.perf_counter()
            logger.info(f"Running {section} checks")
            try:
                step()
            except WeylGraphError as e:
                logger.error(f"{section} step aborted: {e}")
                self.check(section, 'completed', False)
            logger.info(f"{section} checks done in {time.perf_counter() - step_started:.1f}s")
        failed = sum(1 for _, _, ok in self.checks if not ok)
        self.record('summary.checks', len(self.checks))
        self.record('summary.failed', failed)
        self.record('summary.failed_checks', [f"{s}.{n}" for s, n, ok in self.checks if not ok])
        self.record('summary.status', 'PASS' if not failed else 'FAIL')
        logger.info(f"Suite finished in {time.perf_counter() - started:.1f}s: "
                    f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return not failed

    # -- steps ---------------------------------------------------------------

    def run_census(self):
        for label, rank, expected, expected_short in CENSUS:
            system = root_system(label, rank)
            G = weyl_graph(system)
            short = G.count(SHORT)
            name = f"{label}{rank}"
            self.census_rows.append([name, len(system), G.n, short, G.count(LONG), expected])
            self.check('census', f"{name}.vertices", G.n == expected and short == expected_short,
                       G.n)
            self.check('census', f"{name}.roots", len(system) == 2 * expected, len(system))
            lengths = len(system.squared_lengths())
            self.check('census', f"{name}.crystallographic",
                       is_crystallographic(system) and is_closed_under_negation(system)
                       and lengths == (2 if label in 'BCFG' else 1))
        for label, rank in [('A', 1), ('A', 2), ('A', 3), ('A', 4), ('B', 2), ('B', 3), ('B', 4),
                            ('C', 3), ('C', 4), ('D', 4), ('F', 4), ('G', 2)]:
            self.check('census', f"{label}{rank}.commutation",
                       commutation_agrees(root_system(label, rank)))
        for rank in (6, 7, 8):
            self.check('census', f"E{rank}.commutation",
                       commutation_agrees(root_system('E', rank), sample=200, seed=self.seed))

    def run_isomorphism_identities(self):
        for n in range(2, 8):
            self.check('iso', f"A{n}~K({n + 1},2)",
                       are_isomorphic(_weyl('A', n), kneser(n + 1, 2)) is not None)
        for n in range(4, 7):
            self.check('iso', f"D{n}~K({n},2)[K2]",
                       are_isomorphic(_weyl('D', n), double(kneser(n, 2))) is not None)
        self.check('iso', "E6~N-6(2)", are_isomorphic(_weyl('E', 6), quadric_graph(3, '-')) is not None)
        self.check('iso', "E7~Sp6(2)", are_isomorphic(_weyl('E', 7), symplectic_graph(3)) is not None)
        if self.include_slow:
            started = time.perf_counter()
            found = are_isomorphic(_weyl('E', 8), quadric_graph(4, '+')) is not None
            self.check('iso', "E8~N+8(2)", found)
            self.check_time('iso', 'E8', time.perf_counter() - started)
        for label, low in (('A', 1), ('B', 2), ('C', 2), ('D', 4)):
            for n in range(low, 7):
                self.check('iso', f"weyl:{label}{n}~model:{label}{n}",
                           are_isomorphic(_weyl(label, n), combinatorial_weyl(label, n)) is not None)

    def run_local_structure(self):
        for n in range(3, 8):
            profile = local_profile(_weyl('A', n))
            self.check('local', f"A{n}.local~K({n - 1},2)",
                       profile.homogeneous and profile.long_local == canonical_form(kneser(n - 1, 2)))
        profile = local_profile(wf4())
        self.check('local', "F4.short~W(B3)",
                   profile.homogeneous and profile.short_local == canonical_form(_weyl('B', 3)))
        self.check('local', "F4.long~W(C3)", profile.long_local == canonical_form(_weyl('C', 3)))
        for n in range(4, 7):
            W = _weyl('B', n)
            profile = local_profile(W)
            self.check('local', f"B{n}.short~W(B{n - 1})",
                       profile.homogeneous and profile.short_local == canonical_form(_weyl('B', n - 1)))
            expected_long = combine(complete(1, LONG), _weyl('B', n - 2), JOIN)
            self.check('local', f"B{n}.long~K1+W(B{n - 2})",
                       profile.long_local == canonical_form(expected_long))
            if n >= 5:
                first_short = next(v for v in range(W.n) if W.colors[v] is SHORT)
                delta = induced_subgraph(W, (u for u in W.neighbors(first_short)
                                             if W.colors[u] is LONG))
                self.check('local', f"B{n}.short.long_part~W(D{n - 1})",
                           are_isomorphic(delta, _weyl('D', n - 1)) is not None)

    def run_f4_dichotomy(self):
        W, T = wf4(), wf4_twisted()
        self.f4_instances.update({'WF4': W, 'twisted_WF4': T})
        self.check('f4', 'twist.vertices', T.n == 24, T.n)
        self.check('f4', 'twist.locally_like_f4', bool(is_locally_like_f4(T)))
        self.check('f4', 'twist.not_isomorphic', are_isomorphic(W, T) is None)
        for key, G in (('wf4', W), ('twisted', T)):
            aut = automorphism_group(G)
            sizes = sorted(aut.orbit_sizes())
            monochromatic_orbits = all(len({G.colors[v] for v in o}) == 1 for o in aut.orbits)
            self.check('f4', f"{key}.aut_order", aut.order == 576, aut.order)
            self.check('f4', f"{key}.orbits", sizes == [12, 12] and monochromatic_orbits, sizes)
        for key, G, expected in (('wf4', W, WF4), ('twisted', T, TWISTED_WF4)):
            verdict = classify_f4_candidate(G).verdict
            self.check('f4', f"{key}.verdict", verdict == expected, verdict)
        system = root_system('F', 4)
        order = weyl_group_order(system)
        self.check('f4', 'weyl_group_order', order == 1152, order)
        actions = reflection_conjugation_action(system)
        self.check('f4', 'conjugation_automorphisms', all(is_automorphism(W, p) for p in actions))
        image = group_order(W.n, actions)
        self.check('f4', 'conjugation_image_order', image == order // 2, image)
        twists = all_twists(W)
        self.check('f4', 'all_twists_isomorphic',
                   all(are_isomorphic(t, T) is not None for t in twists), len(twists))

    def run_tightness(self):
        W = wf4()
        report = classify_f4_candidate(W)
        mu = report.mu
        self.check('tight', 'diameter', report.diameter == 2, report.diameter)
        self.check('tight', 'tightly_connected', report.tightly_connected)
        self.check('tight', 'mu', mu.mu_range == (3, 3), mu.mu_range)
        self.check('tight', 'mu_s', mu.mu_short_range == (1, 1), mu.mu_short_range)
        self.check('tight', 'mu_l', mu.mu_long_range == (1, 1), mu.mu_long_range)
        contracted = block_contraction(W)
        bivalencies = contracted.bivalencies()
        bipartite = all(contracted.graph.colors[a] is not contracted.graph.colors[b]
                        for a, b in contracted.graph.edges())
        self.check('tight', 'contraction', len(contracted) == 6 and bipartite
                   and bivalencies == [6] * 6, bivalencies)
        self.check('tight', 'all_hypotheses', all(report.hypotheses.values()))

    def run_infinite_families(self):
        shapes = [(4, 4, 4)]
        if self.include_slow:
            shapes.append((6, 4, 4))
        started = time.perf_counter()
        sizes = []
        for shape in shapes:
            key = 'C' + 'xC'.join(map(str, shape))
            blocks = _product(*(cycle(k) for k in shape))
            gamma = build_locally_f4(blocks)
            self.f4_instances[key] = gamma
            sizes.append(gamma.n)
            self.check('family', f"{key}.vertices", gamma.n == 4 * blocks.n, gamma.n)
            self.check('family', f"{key}.connected", is_connected(gamma))
            self.check('family', f"{key}.locally_like_f4", bool(is_locally_like_f4(gamma)))
            round_trip = block_contraction(gamma)
            self.check('family', f"{key}.round_trip",
                       round_trip.multiplicity == ContractedGraph.from_graph(blocks).multiplicity)
            report = classify_f4_candidate(gamma)
            self.check('family', f"{key}.hypotheses_fail",
                       not any(report.hypotheses.values()) and report.verdict == OTHER,
                       sum(1 for v in report.hypotheses.values() if not v))
            self.record(f"family.{key}.mu_range", report.mu.mu_range)
            self.record(f"family.{key}.diameter", report.diameter)
        self.check_time('family', 'builds', time.perf_counter() - started)
        self.check('family', 'distinct_sizes', len(set(sizes)) == len(sizes), sizes)

    def run_b4(self):
        WB4 = _weyl('B', 4)
        star = build_locally_b4(strong_star())
        references = [WB4] + all_twists(WB4)
        self.check('b4', 'star.matches_wb4',
                   any(are_isomorphic(star, H) is not None for H in references))
        gamma = build_locally_b4(subdivided_complete(7))
        self.check('b4', 'subdivided_k7.vertices', gamma.n == 112, gamma.n)
        self.check('b4', 'subdivided_k7.locally_like_b4', bool(is_locally_like_b4(gamma)))

    def run_bn_structure(self):
        for n in (5, 6):
            W = _weyl('B', n)
            comps = components(W, SHORT_ONLY)
            cliques = all(len(c) == n and all(W.adj[v] | 1 << v == W.adj[v] | c.mask
                                              for v in c) for c in comps)
            self.check('bn', f"B{n}.short_components", cliques, [len(c) for c in comps])
            count = long_neighbor_count(W, comps[0])
            self.check('bn', f"B{n}.long_neighbors", count == n * (n - 1), count)
        for n in range(4, 10):
            value = alternating_long_count(n)
            self.check('bn', f"alternating_sum.n{n}", value == n * (n - 1), value)

    def run_cotriangular(self):
        cases = [(f"K({n},2)", kneser(n, 2), True) for n in range(4, 8)]
        cases += [("Sp4(2)", symplectic_graph(2), True), ("Sp6(2)", symplectic_graph(3), True),
                  ("N+6(2)", quadric_graph(3, '+'), True), ("N-6(2)", quadric_graph(3, '-'), True),
                  ("C5", cycle(5), False)]
        for name, G, expected in cases:
            result = is_cotriangular(G)
            self.check('cotriangular', name, bool(result) == expected, bool(result))
            if expected and name != 'K(4,2)':
                self.check('cotriangular', f"{name}.completely_reduced", is_completely_reduced(G))
            if G.n <= 36:
                doubled = bool(is_cotriangular(double(G)))
                self.check('cotriangular', f"{name}.doubled_agrees", doubled == bool(result))
        for n, sign, expected in ((2, '+', 6), (2, '-', 10), (3, '+', 28), (3, '-', 36), (4, '+', 120)):
            count = len(nonsingular_vectors(n, sign))
            self.check('cotriangular', f"nonsingular.{sign}{2 * n}", count == expected, count)

    def run_invariants(self):
        if not self.f4_instances:
            self.f4_instances.update({'WF4': wf4(), 'twisted_WF4': wf4_twisted()})
        total = 0
        for name, G in sorted(self.f4_instances.items()):
            violations = f4_invariant_violations(G)
            for v in violations:
                logger.warning(f"{name}: {v}")
            total += len(violations)
            self.record(f"invariants.{name}.violations", len(violations))
        self.check('invariants', 'violations', total == 0, total)

    def run_relabeling(self):
        rng = random.Random(self.seed)
        W = wf4()
        reference = canonical_form(W)
        failures = 0
        for _ in range(self.relabel_rounds):
            perm = list(range(W.n))
            rng.shuffle(perm)
            shuffled = relabel(W, perm)
            mapping = are_isomorphic(W, shuffled)
            if canonical_form(shuffled) != reference or mapping is None:
                failures += 1
                continue
            # perm^-1 o mapping is an automorphism of W
            inverse = [0] * W.n
            for v, p in enumerate(perm):
                inverse[p] = v
            if not is_automorphism(W, [inverse[mapping[v]] for v in range(W.n)]):
                failures += 1
        self.record('relabel.rounds', self.relabel_rounds)
        self.check('relabel', 'failures', failures == 0, failures)

    # -- output ----------------------------------------------------------------

    def to_kv(self) -> str:
        return ''.join(f"{key} = {value}\n" for key, value in self.entries)

    def to_text(self) -> str:
        parts = ["weylgraphs verification report"]
        if self.started:
            parts.append(f"started {self.started}")
        parts.append("")
        if self.census_rows:
            parts.append(tabulate(self.census_rows,
                                  headers=['type', 'roots', 'reflections', 'short', 'long', 'expected'],
                                  tablefmt='simple'))
            parts.append("")
        rows = [[section, name, 'PASS' if ok else 'FAIL'] for section, name, ok in self.checks]
        parts.append(tabulate(rows, headers=['section', 'check', 'result'], tablefmt='simple'))
        if self.timings:
            parts.append("")
            parts.append(tabulate(self.timings, headers=['timing', 'seconds'], tablefmt='simple'))
        failed = sum(1 for _, _, ok in self.checks if not ok)
        parts += ["", f"{len(self.checks) - failed}/{len(self.checks)} checks passed"]
        return '\n'.join(parts) + '\n'

    def render(self, fmt: str = KV) -> str:
        return self.to_text() if fmt == TEXT else self.to_kv()
