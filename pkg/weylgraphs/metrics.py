"""
Prometheus instrumentation for weylgraphs

The tool runs as a batch job, so metrics live in a private registry and are
written to a textfile on request instead of being served over HTTP.
"""

import logging

from prometheus_client import (CollectorRegistry, Counter, Histogram,
                               write_to_textfile)

logger = logging.getLogger(__name__)

registry = CollectorRegistry()

search_nodes_total = Counter(
    'weylgraphs_search_nodes_total',
    'Search-tree nodes visited by the canonical labeling search',
    registry=registry)
search_leaves_total = Counter(
    'weylgraphs_search_leaves_total',
    'Discrete partitions reached by the canonical labeling search',
    registry=registry)
automorphisms_found_total = Counter(
    'weylgraphs_automorphisms_found_total',
    'Automorphisms discovered during canonical labeling',
    registry=registry)
canonical_form_seconds = Histogram(
    'weylgraphs_canonical_form_seconds',
    'Time spent computing one canonical form',
    buckets=(0.001, 0.01, 0.1, 0.5, 1, 5, 15, 60),
    registry=registry)
graphs_built_total = Counter(
    'weylgraphs_graphs_built_total',
    'Graphs constructed, by constructor',
    ['constructor'],
    registry=registry)
checks_total = Counter(
    'weylgraphs_checks_total',
    'Verification checks run, by check and outcome',
    ['check', 'outcome'],
    registry=registry)


def record_check(check, passed):
    checks_total.labels(check=check, outcome='pass' if passed else 'fail').inc()


def write_metrics(path):
    """Write the registry to a Prometheus textfile"""
    write_to_textfile(path, registry)
    logger.info(f"Metrics written to {path}")
