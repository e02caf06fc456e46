"""
Graph expressions

    weyl:F4   model:B5   kneser:7,2   sp:3   quadric:3,-
    cycle:4   complete:4   empty:3   path:3   path/to/graph.bcg
    double(x)  product(x, y, ...)  join(x, y)  union(x, y)  complement(x)
    reduce(x)  swapcolors(x)  twist(x[,a,b])  f4build(x)  b4build(x)

Parsing checks names, arities and ranks; evaluation builds the graph.
"""

import logging
import re
from dataclasses import dataclass
from functools import reduce as fold
from typing import Tuple, Union

from . import families, graph, recognition, roots
from .errors import ExprSyntaxError, InputError
from .graph import BichromaticGraph, ContractedGraph
from .graphio import read_graph

logger = logging.getLogger(__name__)

# constructor -> argument shape
CONSTRUCTORS = {
    'weyl': 'type',
    'model': 'type',
    'kneser': 'int,int',
    'sp': 'int',
    'quadric': 'int,sign',
    'cycle': 'int',
    'complete': 'int',
    'empty': 'int',
    'path': 'int',
}

# combinator -> (min arity, max arity); None = unbounded
COMBINATORS = {
    'double': (1, 1),
    'product': (2, None),
    'join': (2, 2),
    'union': (2, 2),
    'complement': (1, 1),
    'reduce': (1, 1),
    'swapcolors': (1, 1),
    'twist': (1, 3),  # graph, then optionally two block indices
    'f4build': (1, 1),
    'b4build': (1, 1),
}

FILE = 'file'

_NAME = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_INT = re.compile(r'-?\d+')
_TYPE = re.compile(r'[A-Za-z]_?\d+')
_PATH = re.compile(r'[^\s(),]+')


@dataclass(frozen=True)
class GraphExpr:
    kind: str
    args: Tuple = ()
    position: int = 0

    def __str__(self):
        if self.kind == FILE:
            return self.args[0]
        if self.kind in CONSTRUCTORS:
            if CONSTRUCTORS[self.kind] == 'type':
                return f"{self.kind}:{self.args[0]}{self.args[1]}"
            return f"{self.kind}:" + ','.join(map(str, self.args))
        return f"{self.kind}(" + ','.join(map(str, self.args)) + ")"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, position=None):
        raise ExprSyntaxError(message, self.pos if position is None else position)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, char: str):
        if self.peek() != char:
            found = self.peek() or 'end of input'
            self.error(f"expected {char!r}, found {found!r}")
        self.pos += 1

    def match(self, pattern, what: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def expr(self) -> GraphExpr:
        self.skip()
        start = self.pos
        m = _NAME.match(self.text, self.pos)
        if m:
            name = m.group(0)
            after = self.text[m.end():m.end() + 1]
            if after == '(':
                if name not in COMBINATORS:
                    self.error(f"unknown combinator {name!r}", start)
                self.pos = m.end() + 1
                return self.call(name, start)
            if after == ':':
                if name not in CONSTRUCTORS:
                    self.error(f"unknown constructor {name!r}", start)
                self.pos = m.end() + 1
                return self.constructor(name, start)
        if self.pos >= len(self.text):
            self.error("expected an expression, found end of input")
        path = self.match(_PATH, "an expression")
        return GraphExpr(FILE, (path,), start)

    def call(self, name: str, start: int) -> GraphExpr:
        args = []
        if self.peek() != ')':
            args.append(self.expr())
            while self.peek() == ',':
                self.pos += 1
                args.append(self.integer() if name == 'twist' else self.expr())
        self.expect(')')
        if name == 'twist' and len(args) == 2:
            self.error("twist takes a graph and either no block indices or two", start)
        low, high = COMBINATORS[name]
        if len(args) < low or (high is not None and len(args) > high):
            wanted = f"{low}" if low == high else f"at least {low}" if high is None else f"{low}-{high}"
            self.error(f"{name} takes {wanted} argument(s), got {len(args)}", start)
        return GraphExpr(name, tuple(args), start)

    def integer(self) -> int:
        return int(self.match(_INT, "an integer"))

    def constructor(self, name: str, start: int) -> GraphExpr:
        shape = CONSTRUCTORS[name]
        if shape == 'type':
            at = self.pos
            text = self.match(_TYPE, "a root system type such as F4")
            try:
                label, rank = roots.parse_type(text)
            except InputError as e:
                self.error(str(e), at)
            if name == 'model' and label not in roots.MINIMUM_RANK:
                self.error(f"no combinatorial model for type {label}", at)
            return GraphExpr(name, (label, rank), start)
        values = []
        for part in shape.split(','):
            if values:
                self.expect(',')
            if part == 'int':
                values.append(self.integer())
            else:
                sign = self.peek()
                if sign not in ('+', '-'):
                    self.error("expected + or -")
                self.pos += 1
                values.append(sign)
        return GraphExpr(name, tuple(values), start)


def parse_expr(text: str) -> GraphExpr:
    """Parse a graph expression; errors carry the offending position"""
    parser = _Parser(text)
    node = parser.expr()
    if parser.peek():
        parser.error(f"unexpected trailing text {text[parser.pos:]!r}")
    return node


Value = Union[BichromaticGraph, ContractedGraph]


def _as_graph(value: Value) -> BichromaticGraph:
    return value.graph if isinstance(value, ContractedGraph) else value


def evaluate(node: GraphExpr) -> Value:
    """Build the graph an expression denotes. Files with strong-edge marks
    evaluate to a ContractedGraph; everything else to a BichromaticGraph."""
    kind, args = node.kind, node.args
    if kind == FILE:
        G, strong = read_graph(args[0])
        return ContractedGraph.from_graph(G, strong) if strong else G
    if kind == 'weyl':
        return roots.weyl_graph(roots.root_system(*args))
    if kind == 'model':
        return roots.combinatorial_weyl(*args)
    if kind == 'kneser':
        return families.kneser(*args)
    if kind == 'sp':
        return families.symplectic_graph(*args)
    if kind == 'quadric':
        return families.quadric_graph(*args)
    if kind in ('cycle', 'complete', 'empty', 'path'):
        if args[0] < 0:
            raise InputError(f"{kind}:{args[0]} needs a non-negative size")
        return getattr(graph, kind)(args[0])

    if kind == 'twist':
        return recognition.twist(_as_graph(evaluate(args[0])), *args[1:])
    values = [evaluate(child) for child in args]
    if kind == 'f4build':
        return recognition.build_locally_f4(values[0])
    if kind == 'b4build':
        return recognition.build_locally_b4(values[0])
    graphs = [_as_graph(v) for v in values]
    if kind == 'double':
        return graph.double(graphs[0])
    if kind == 'product':
        return fold(lambda g, h: graph.combine(g, h, graph.CARTESIAN_PRODUCT), graphs)
    if kind == 'join':
        return graph.combine(graphs[0], graphs[1], graph.JOIN)
    if kind == 'union':
        return graph.combine(graphs[0], graphs[1], graph.DISJOINT_UNION)
    if kind == 'complement':
        return graph.complement(graphs[0])
    if kind == 'reduce':
        return graph.reduced_graph(graphs[0])[0]
    if kind == 'swapcolors':
        return graph.swap_colors(graphs[0])
    raise InputError(f"Cannot evaluate {kind!r}")


def evaluate_text(text: str) -> Value:
    """Parse and evaluate; the result is named after the expression"""
    node = parse_expr(text)
    value = evaluate(node)
    if isinstance(value, BichromaticGraph):
        value = value.with_name(str(node))
    logger.debug(f"Evaluated {node}")
    return value


def evaluate_graph(text: str) -> BichromaticGraph:
    return _as_graph(evaluate_text(text))
