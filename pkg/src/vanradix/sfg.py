"""Signal flow graphs of the clockwise kernels, with DOT and JSON export.

Nodes are inputs, outputs, two-input adders and one-input gain or delay
blocks. Multiplications by +1 are wires; multiplications by -1 are carried as
a sign on the wire and show up as dashed (``-1``) edges where they enter an
adder or an output. A delay block may carry a real pre-gain, which is how the
lower half of the radius diagonal shares the scalar-block GDBs.

Evaluating the graph (:meth:`SfgGraph.evaluate`) performs the same floating
point operations in the same order as :func:`~vanradix.transform.transform`,
so results agree bit for bit.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_vectors
from .core import FactorKind, VanSpec, build_factors, output_gather
from .exceptions import EmptyGraph, NotRealizable
from .transform import TransformKind, check_compatible


class NodeKind(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    ADDER = "adder"
    GAIN = "gain"
    DELAY = "delay"


@dataclass(frozen=True)
class SfgNode:
    id: int
    kind: NodeKind
    label: str
    gain: float | None = None


@dataclass(frozen=True)
class SfgEdge:
    source: int
    target: int
    weight: complex  # exactly 1 or -1 on adder/output inputs

    @property
    def is_negation(self) -> bool:
        return self.weight == -1


@dataclass(frozen=True)
class SfgStage:
    name: str
    node_ids: tuple[int, ...]


@dataclass(frozen=True)
class SfgGraph:
    kind: str
    n: int
    nodes: tuple[SfgNode, ...]
    edges: tuple[SfgEdge, ...]
    stages: tuple[SfgStage, ...]
    _incoming: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        incoming = {node.id: [] for node in self.nodes}
        for edge in self.edges:
            incoming[edge.target].append(edge)
        object.__setattr__(self, "_incoming", incoming)

    def count(self, *kinds: NodeKind) -> int:
        return sum(node.kind in kinds for node in self.nodes)

    @property
    def gdb_count(self) -> int:
        return self.count(NodeKind.GAIN, NodeKind.DELAY)

    @property
    def adder_count(self) -> int:
        return self.count(NodeKind.ADDER)

    def weights(self) -> list[complex]:
        """Weights of every gain/delay block, in node order."""
        return [self._incoming[node.id][0].weight for node in self.nodes
                if node.kind in (NodeKind.GAIN, NodeKind.DELAY)]

    def check_invariants(self):
        """Raise ``AssertionError`` on a malformed graph (degrees, acyclicity)."""
        out_degree = {node.id: 0 for node in self.nodes}
        for edge in self.edges:
            assert edge.source < edge.target, f"edge {edge} breaks topological order"
            out_degree[edge.source] += 1
        expected = {NodeKind.INPUT: 0, NodeKind.OUTPUT: 1, NodeKind.ADDER: 2,
                    NodeKind.GAIN: 1, NodeKind.DELAY: 1}
        for node in self.nodes:
            assert len(self._incoming[node.id]) == expected[node.kind], node
            if node.kind is NodeKind.OUTPUT:
                assert out_degree[node.id] == 0, node

    def evaluate(self, z) -> np.ndarray:
        """Run the graph as a dataflow program on one vector or a batch of rows."""
        x = check_vectors(z, self.n)
        # lanes are always arrays: numpy's vector complex product (FMA) can
        # differ in the last bit from its scalar product
        lanes = np.atleast_2d(x).T
        values = {}
        outputs = []
        for node in self.nodes:
            if node.kind is NodeKind.INPUT:
                values[node.id] = lanes[len(values)]
                continue
            edges = self._incoming[node.id]
            if node.kind is NodeKind.ADDER:
                first, second = (_signed(e, values[e.source]) for e in edges)
                values[node.id] = first + second
            elif node.kind is NodeKind.OUTPUT:
                outputs.append(_signed(edges[0], values[edges[0].source]))
            else:
                src = values[edges[0].source]
                if node.gain is not None:
                    src = src * node.gain
                values[node.id] = edges[0].weight * src
        y = np.array(outputs).T
        return y[0] if x.ndim == 1 else y


def _signed(edge: SfgEdge, value):
    return -value if edge.weight == -1 else value


def _fmt(w: complex) -> str:
    w = complex(w)
    return f"{w.real:+.6f}{w.imag:+.6f}j"


class _Builder:
    def __init__(self, kind: TransformKind, n: int):
        self.kind, self.n = kind, n
        self.nodes: list[SfgNode] = []
        self.edges: list[SfgEdge] = []
        self.stages: list[SfgStage] = []
        self._open: list[int] = []
        # per lane: (node id, +-1) of the value currently on that wire
        self.lanes: list[tuple[int, int]] = []
        self.pending_gain: dict[int, tuple[int, float]] = {}

    def begin(self, name: str):
        self._open = []
        self.stages.append(SfgStage(name, ()))

    def end(self):
        name = self.stages[-1].name
        self.stages[-1] = SfgStage(name, tuple(self._open))

    def node(self, kind: NodeKind, label: str, gain=None) -> int:
        nid = len(self.nodes)
        self.nodes.append(SfgNode(nid, kind, label, gain))
        self._open.append(nid)
        return nid

    def edge(self, source: int, target: int, weight):
        self.edges.append(SfgEdge(source, target, weight))

    def scale(self, lane: int, weight: complex, label: str):
        """Multiply a lane by ``weight``, absorbing any pending radius gain."""
        src, sign = self.lanes[lane]
        pending = self.pending_gain.pop(lane, None)
        if pending is None:
            if weight == 1:
                return
            if weight == -1:
                self.lanes[lane] = (src, -sign)
                return
            nid = self.node(NodeKind.DELAY, f"{label} {_fmt(weight)}")
        else:
            power, gain = pending
            nid = self.node(NodeKind.DELAY, f"r^{power} * {label} {_fmt(weight)}", gain=gain)
        self.edge(src, nid, complex(weight))
        self.lanes[lane] = (nid, sign)

    def add(self, a_lane: int, b_lane: int, subtract: bool, label: str) -> tuple[int, int]:
        (a, sa), (b, sb) = self.lanes[a_lane], self.lanes[b_lane]
        nid = self.node(NodeKind.ADDER, label)
        self.edge(a, nid, sa)
        self.edge(b, nid, -sb if subtract else sb)
        return nid, 1

    def graph(self) -> SfgGraph:
        return SfgGraph(self.kind.value, self.n, tuple(self.nodes), tuple(self.edges),
                        tuple(self.stages))


def build_sfg(kind, spec: VanSpec) -> SfgGraph:
    """Signal flow graph of ``vanc`` or ``vancr`` for ``spec``.

    Counterclockwise kernels need time advances and raise :class:`NotRealizable`.
    """
    kind = TransformKind.parse(kind)
    if kind in (TransformKind.VANCC, TransformKind.VANCCR):
        raise NotRealizable(f"{kind.value} uses time advances and has no causal signal flow graph")
    check_compatible(kind, spec)
    n = spec.n
    b = _Builder(kind, n)

    b.begin("input")
    b.lanes = [(b.node(NodeKind.INPUT, f"z{i}"), 1) for i in range(n)]
    b.end()

    for f in build_factors(spec):
        b.begin(f"{f.kind.value}[{f.level}]")
        h = f.size // 2
        if f.kind is FactorKind.RADIUS_DIAGONAL:
            for lane in range(1, n):
                gain = f.payload[lane]
                if lane >= n // 2:
                    # shares the GDB of the following scalar block (or leaf when N = 2)
                    b.pending_gain[lane] = (lane, gain)
                    continue
                src, sign = b.lanes[lane]
                nid = b.node(NodeKind.GAIN, f"r^{lane} {gain:.6g}")
                b.edge(src, nid, complex(gain))
                b.lanes[lane] = (nid, sign)
        elif f.kind is FactorKind.SCALAR_BLOCK:
            for block in range(f.blocks):
                for i in range(h):
                    b.scale(block * f.size + h + i, f.payload, f"c[{f.size}]")
        elif f.kind is FactorKind.BUTTERFLY:
            for block in range(f.blocks):
                base = block * f.size
                new = {}
                for i in range(h):
                    top, bot = base + i, base + h + i
                    new[top] = b.add(top, bot, False, f"+[{f.size}]")
                    new[bot] = b.add(top, bot, True, f"-[{f.size}]")
                for lane, signal in new.items():
                    b.lanes[lane] = signal
        elif f.kind is FactorKind.DELAY_DIAGONAL:
            for block in range(f.blocks):
                for i in range(h):
                    b.scale(block * f.size + h + i, f.payload[i], f"w{i}/{f.size}")
        elif f.kind is FactorKind.BASE:
            for block in range(f.blocks):
                a, c = 2 * block, 2 * block + 1
                b.scale(c, f.payload, "leaf")
                upper = b.add(a, c, False, "+[2]")
                lower = b.add(a, c, True, "-[2]")
                b.lanes[a], b.lanes[c] = upper, lower
        b.end()

    b.begin("output")
    gather = output_gather(n)
    for k in range(n):
        src, sign = b.lanes[gather[k]]
        nid = b.node(NodeKind.OUTPUT, f"y{k}")
        b.edge(src, nid, sign)
    b.end()
    return b.graph()


_DOT_SHAPES = {
    NodeKind.INPUT: "circle",
    NodeKind.OUTPUT: "doublecircle",
    NodeKind.ADDER: "circle",
    NodeKind.GAIN: "triangle",
    NodeKind.DELAY: "box",
}


def _require_nodes(graph: SfgGraph):
    if not graph.nodes:
        raise EmptyGraph("cannot export a graph without nodes")


def export_dot(graph: SfgGraph) -> str:
    """Graphviz text; ``-1`` edges are dashed. Output is deterministic."""
    _require_nodes(graph)
    lines = [f'digraph "{graph.kind}_{graph.n}" {{', "  rankdir=LR;"]
    for index, stage in enumerate(graph.stages):
        if not stage.node_ids:
            continue
        lines.append(f"  subgraph cluster_{index} {{")
        lines.append(f'    label="{stage.name}";')
        for nid in stage.node_ids:
            node = graph.nodes[nid]
            label = node.label.replace('"', "'")
            lines.append(f'    n{nid} [label="{label}", shape={_DOT_SHAPES[node.kind]}];')
        lines.append("  }")
    for edge in graph.edges:
        if edge.weight == 1:
            attrs = ""
        elif edge.weight == -1:
            attrs = " [style=dashed]"
        else:
            attrs = f' [label="{_fmt(edge.weight)}"]'
        lines.append(f"  n{edge.source} -> n{edge.target}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _json_weight(w):
    if w == 1:
        return "+1"
    if w == -1:
        return "-1"
    w = complex(w)
    return {"re": w.real, "im": w.imag}


def to_json(graph: SfgGraph) -> str:
    """JSON mirror with top-level keys ``nodes``, ``edges`` and ``stages``."""
    _require_nodes(graph)
    doc = {
        "kind": graph.kind,
        "n": graph.n,
        "nodes": [
            {"id": node.id, "kind": node.kind.value, "label": node.label,
             **({"gain": node.gain} if node.gain is not None else {})}
            for node in graph.nodes
        ],
        "edges": [
            {"from": e.source, "to": e.target, "weight": _json_weight(e.weight)}
            for e in graph.edges
        ],
        "stages": [{"name": s.name, "nodes": list(s.node_ids)} for s in graph.stages],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
