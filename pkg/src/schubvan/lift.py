"""Polynomial systems, their size, and lifted formulations.

A :class:`PolySystem` is a list of equations ``f = 0`` over named variables and
parameters.  Equations are :class:`~schubvan.poly.SparsePoly` objects whose
variable index ``k`` refers to ``system.names[k]`` (variables first, then
parameters).

The centrepiece is :func:`det_lifted`, a lifted formulation of ``det X = z``
read off the clow-sequence graph :func:`mv_graph`: one unknown per node equal
to the weighted sum over incoming edges, so each unknown ends up holding the
signed sum of weighted paths from the source.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import MalformedInput, NotForwardSolvable, TooLarge
from .poly import SparsePoly, bit_length

__all__ = [
    "PolySystem",
    "LiftedFormulation",
    "LayeredDAG",
    "phi_size",
    "power_chain",
    "mv_graph",
    "mv_counts",
    "signed_path_sum",
    "det_lifted",
    "det_lifted_phi",
    "evaluate_lifted",
    "forward_solve",
    "leibniz_det",
    "matrix_var",
    "write_polysys",
    "read_polysys",
]

_NAME = re.compile(r"^[a-z0-9_]+$")


# -- systems -------------------------------------------------------------------


@dataclass
class PolySystem:
    variables: list[str]
    parameters: list[str] = field(default_factory=list)
    equations: list[SparsePoly] = field(default_factory=list)

    def __post_init__(self) -> None:
        names = self.names
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise MalformedInput(f"names declared more than once: {dup[:5]}")
        bad = [n for n in names if not _NAME.match(n)]
        if bad:
            raise MalformedInput(f"illegal names: {bad[:5]}")
        self._index = {n: k for k, n in enumerate(names)}
        for f in self.equations:
            self._check(f)

    @property
    def names(self) -> list[str]:
        return list(self.variables) + list(self.parameters)

    def index(self, name: str) -> int:
        return self._index[name]

    def _check(self, f: SparsePoly) -> None:
        if f.nvars > len(self.variables) + len(self.parameters):
            raise MalformedInput("equation references an undeclared name")

    def add(self, f: SparsePoly) -> None:
        self._check(f)
        self.equations.append(f)

    def term(self, *factors: str | tuple[str, int]) -> SparsePoly:
        """Monomial in named indeterminates, e.g. ``sys.term("a_1_2", ("x", 2))``."""
        exps: dict[int, int] = {}
        for f in factors:
            name, e = (f, 1) if isinstance(f, str) else f
            k = self._index[name]
            exps[k] = exps.get(k, 0) + e
        return SparsePoly({tuple(sorted((k, e) for k, e in exps.items() if e)): 1})

    def format_equation(self, f: SparsePoly) -> str:
        return f.format(self.names)


def phi_size(system: PolySystem | Iterable[SparsePoly]) -> int:
    """Sum of equation degrees plus the bit lengths of all coefficients."""
    eqs = system.equations if isinstance(system, PolySystem) else system
    return sum(f.degree() for f in eqs) + sum(
        bit_length(c) for f in eqs for _, c in f.items()
    )


def write_polysys(system: PolySystem) -> str:
    """Serialise in the ``POLYSYS 1`` text format (byte-stable)."""
    lines = ["POLYSYS 1"]
    lines += [f"VAR {v}" for v in system.variables]
    lines += [f"PARAM {p}" for p in system.parameters]
    names = system.names
    lines += [f"EQ {f.format(names)}" for f in system.equations]
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"\s*([+-])?\s*(\d+)((?:\*[a-z0-9_]+(?:\^\d+)?)*)\s*")


def _parse_poly(text: str, index: Mapping[str, int]) -> SparsePoly:
    text = text.strip()
    if text == "0":
        return SparsePoly()
    out: dict = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInput(f"cannot parse polynomial at {text[pos:pos + 20]!r}")
        sign, coef, factors = m.groups()
        c = -int(coef) if sign == "-" else int(coef)
        exps: dict[int, int] = {}
        for factor in filter(None, factors.split("*")):
            name, _, e = factor.partition("^")
            if name not in index:
                raise MalformedInput(f"undeclared name {name!r}")
            k = index[name]
            exps[k] = exps.get(k, 0) + (int(e) if e else 1)
        key = tuple(sorted(exps.items()))
        out[key] = out.get(key, 0) + c
        pos = m.end()
    return SparsePoly(out)


def read_polysys(text: str) -> PolySystem:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "POLYSYS 1":
        raise MalformedInput("missing 'POLYSYS 1' header")
    variables, parameters, raw_eqs = [], [], []
    for line in lines[1:]:
        if not line.strip():
            continue
        tag, _, rest = line.partition(" ")
        if tag == "VAR":
            variables.append(rest.strip())
        elif tag == "PARAM":
            parameters.append(rest.strip())
        elif tag == "EQ":
            raw_eqs.append(rest)
        else:
            raise MalformedInput(f"unknown record {tag!r}")
    system = PolySystem(variables, parameters)
    index = {n: k for k, n in enumerate(system.names)}
    for raw in raw_eqs:
        system.add(_parse_poly(raw, index))
    return system


# -- forward evaluation --------------------------------------------------------


@dataclass
class ForwardResult:
    values: dict[str, int]
    violated: list[int]

    @property
    def satisfied(self) -> bool:
        return not self.violated


def forward_solve(
    system: PolySystem,
    known: Mapping[str, int],
    modulus: int | None = None,
) -> ForwardResult:
    """Solve equations in order, each for its single still-unknown name.

    An equation with one unknown ``u`` must contain ``u`` only in a single
    linear term ``c*u``; it then fixes ``u``.  An equation with no unknowns is
    a check, and its index is reported in ``violated`` when it does not
    vanish.  Anything else raises :class:`NotForwardSolvable`.
    """
    names = system.names
    values: list[int | None] = [None] * len(names)
    for name, val in known.items():
        values[system.index(name)] = val % modulus if modulus else val
    violated = []
    for k, f in enumerate(system.equations):
        unknown = {i for i in f.variables() if values[i] is None}
        if len(unknown) > 1:
            raise NotForwardSolvable(
                f"equation {k} has unknowns {sorted(names[i] for i in unknown)[:4]}"
            )
        rest, pivot = 0, None
        target = unknown.pop() if unknown else None
        for m, c in f.items():
            if target is not None and any(i == target for i, _ in m):
                if pivot is not None or m != ((target, 1),):
                    raise NotForwardSolvable(f"equation {k} is not linear in {names[target]}")
                pivot = c
                continue
            t = c
            for i, e in m:
                t *= pow(values[i], e, modulus) if modulus else values[i] ** e
            rest += t
        if target is None:
            if (rest % modulus if modulus else rest) != 0:
                violated.append(k)
            continue
        if modulus:
            values[target] = (-rest * pow(pivot, -1, modulus)) % modulus
        else:
            q, r = divmod(-rest, pivot)
            if r:
                raise NotForwardSolvable(f"equation {k}: {names[target]} is not an integer")
            values[target] = q
    return ForwardResult(
        {n: v for n, v in zip(names, values) if v is not None}, violated
    )


@dataclass
class LiftedFormulation:
    """A system over ``base_vars`` and auxiliary ``aux_vars``.

    Its solutions project onto those of a source system in ``base_vars``;
    ``inputs`` are the base variables that are free in the source system and
    ``output`` the base variable the lift computes from them.
    """

    base_vars: list[str]
    aux_vars: list[str]
    system: PolySystem
    inputs: list[str]
    output: str


def evaluate_lifted(
    lift: LiftedFormulation,
    x_assignment: Mapping[str, int],
    modulus: int | None = None,
) -> tuple[int, dict[str, int]]:
    """Forward-solve the lift at given inputs; return ``(output value, aux values)``."""
    missing = set(lift.inputs) - set(x_assignment)
    if missing:
        raise NotForwardSolvable(f"inputs not assigned: {sorted(missing)[:4]}")
    res = forward_solve(lift.system, x_assignment, modulus)
    if res.violated:
        raise NotForwardSolvable(f"equations {res.violated[:4]} fail after forward solve")
    aux = {v: res.values[v] for v in lift.aux_vars}
    return res.values[lift.output], aux


# -- power chain ---------------------------------------------------------------


def power_chain(r: int) -> LiftedFormulation:
    """``y1 = x^2, y2 = y1^2, ..., y_r = y_(r-1)^2, y_r = z``: a lift of ``x^(2^r) = z``."""
    if r < 1:
        raise ValueError("power chain needs r >= 1")
    ys = [f"y{k}" for k in range(1, r + 1)]
    system = PolySystem(["x", "z"] + ys)
    system.add(system.term(ys[0]) - system.term(("x", 2)))
    for prev, cur in zip(ys, ys[1:]):
        system.add(system.term(cur) - system.term((prev, 2)))
    system.add(system.term(ys[-1]) - system.term("z"))
    return LiftedFormulation(["x", "z"], ys, system, inputs=["x"], output="z")


# -- clow-sequence graph -------------------------------------------------------

Node = Hashable  # "s", "t+", "t-", or (layer, head, current, parity)
SOURCE, SINK_PLUS, SINK_MINUS = "s", "t+", "t-"


@dataclass
class LayeredDAG:
    """Layered graph whose signed path sum is ``det X``.

    Interior node ``(l, h, u, e)``: ``l`` matrix entries consumed so far, the
    open closed walk has head ``h`` and sits at ``u >= h``, and ``e`` is the
    parity of the number of closed walks already completed.  ``weight`` is
    ``(i, j)`` for ``x_ij`` or ``None`` for the constant 1.
    """

    n: int
    nodes: list[Node]
    edges: list[tuple[Node, Node, tuple[int, int] | None]]

    def layer(self, node: Node) -> int:
        """Source at 0, interior ``(l, ...)`` at ``l + 1``, sinks at ``n + 1``."""
        if node == SOURCE:
            return 0
        if node in (SINK_PLUS, SINK_MINUS):
            return self.n + 1
        return node[0] + 1

    def in_edges(self) -> dict[Node, list[tuple[Node, tuple[int, int] | None]]]:
        incoming: dict[Node, list] = {v: [] for v in self.nodes}
        for a, b, wt in self.edges:
            incoming[b].append((a, wt))
        return incoming


def _mv_successors(n: int, node, flip_sinks: bool = False):
    """Outgoing edges ``(target, weight)`` of a node of the clow graph."""
    if node == SOURCE:
        return [((0, h, h, 0), None) for h in range(1, n + 1)]
    l, h, u, e = node
    if l == n - 1:
        # closing the last walk makes e + 1 walks in all; sign (-1)^(n + walks)
        plus = (n + e + 1) % 2 == 0
        if flip_sinks:
            plus = not plus
        return [(SINK_PLUS if plus else SINK_MINUS, (u, h))]
    out = [((l + 1, h, v, e), (u, v)) for v in range(h + 1, n + 1)]
    out += [((l + 1, h2, h2, 1 - e), (u, h)) for h2 in range(h + 1, n + 1)]
    return out


def mv_graph(n: int, *, flip_sinks: bool = False) -> LayeredDAG:
    """Clow-sequence graph for the ``n x n`` determinant, trimmed to useful nodes.

    Only nodes lying on some source-to-sink path are kept.  ``flip_sinks`` swaps
    the sink rule and exists solely so the self-test can prove it notices.
    """
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    forward: dict = {SOURCE: _mv_successors(n, SOURCE, flip_sinks)}
    frontier = [SOURCE]
    order = [SOURCE]
    while frontier:
        nxt = []
        for node in frontier:
            for target, _ in forward[node]:
                if target not in forward and target not in (SINK_PLUS, SINK_MINUS):
                    forward[target] = _mv_successors(n, target, flip_sinks)
                    nxt.append(target)
        nxt.sort()
        order += nxt
        frontier = nxt
    # backward pass: drop nodes with no route to a sink
    alive = {SINK_PLUS, SINK_MINUS}
    for node in reversed(order):
        if any(t in alive for t, _ in forward[node]):
            alive.add(node)
    nodes = [v for v in order if v in alive] + [SINK_PLUS, SINK_MINUS]
    edges = [
        (a, b, wt)
        for a in nodes[:-2]
        for b, wt in forward[a]
        if b in alive
    ]
    return LayeredDAG(n, nodes, edges)


def mv_counts(n: int) -> tuple[int, int]:
    """Closed forms for ``(len(nodes), len(edges))`` of :func:`mv_graph`.

    Node count includes the source and both sinks.  The first, second and
    last two layers differ from the generic layer, so the polynomials only
    take over once those are distinct (``n >= 3`` for nodes, ``n >= 4`` for
    edges).
    """
    small = {1: (4, 2), 2: (6, 5), 3: (16, 25)}
    if n in small:
        return small[n]
    nodes = (2 * n**3 - 3 * n**2 - 5 * n + 20) // 2
    edges = (8 * n**4 - 38 * n**3 + 49 * n**2 + 95 * n - 192) // 6
    return nodes, edges


def matrix_var(i: int, j: int, n: int) -> int:
    """Variable index of ``x_ij`` in :func:`leibniz_det` and :func:`signed_path_sum`."""
    return (i - 1) * n + (j - 1)


def signed_path_sum(dag: LayeredDAG) -> SparsePoly:
    """Paths to ``t+`` minus paths to ``t-``, as a polynomial in ``x_ij``."""
    n = dag.n
    value: dict[Node, SparsePoly] = {SOURCE: SparsePoly.const(1)}
    for node in dag.nodes[1:]:
        value[node] = SparsePoly()
    for a, b, wt in sorted(dag.edges, key=lambda e: dag.layer(e[0])):
        contrib = value[a] if wt is None else value[a] * SparsePoly.var(matrix_var(*wt, n))
        value[b] = value[b] + contrib
    return value[SINK_PLUS] - value[SINK_MINUS]


def leibniz_det(n: int) -> SparsePoly:
    """``sum_sigma sign(sigma) prod_i x_{i, sigma(i)}``; refuses ``n > 6``."""
    if n > 6:
        raise TooLarge(f"Leibniz expansion has {math.factorial(n)} terms")
    terms = {}
    for sigma in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(sigma, 2) if a > b)
        mono = tuple(sorted((i * n + s, 1) for i, s in enumerate(sigma)))
        terms[mono] = -1 if inversions % 2 else 1
    return SparsePoly(terms)


def _node_name(prefix: str, node: Node) -> str:
    if node == SOURCE:
        return f"{prefix}_s"
    if node == SINK_PLUS:
        return f"{prefix}_tp"
    if node == SINK_MINUS:
        return f"{prefix}_tm"
    return prefix + "_" + "_".join(map(str, node))


def default_entry_name(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def det_lifted(
    n: int,
    *,
    entry_name: Callable[[int, int], str] = default_entry_name,
    node_prefix: str = "y",
    output: str | None = "z",
    extra_parameters: Sequence[str] = (),
    dag: LayeredDAG | None = None,
) -> LiftedFormulation:
    """Lifted formulation of ``det X = output`` with one unknown per graph node.

    With ``output=None`` the last equation becomes ``y_tp - y_tm = 0``,
    i.e. a lift of ``det X = 0``.
    """
    dag = dag or mv_graph(n)
    aux = [_node_name(node_prefix, v) for v in dag.nodes]
    entries = [entry_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    base = entries + ([output] if output else [])
    system = PolySystem(aux + base, list(extra_parameters))
    system.equations.extend(det_equations(system, dag, entry_name, node_prefix))
    tp, tm = system.term(aux[-2]), system.term(aux[-1])
    if output:
        system.add(system.term(output) - tp + tm)
    else:
        system.add(tp - tm)
    return LiftedFormulation(base, aux, system, inputs=entries, output=output or aux[-2])


def det_equations(
    system: PolySystem,
    dag: LayeredDAG,
    entry_name: Callable[[int, int], str],
    node_prefix: str,
) -> list[SparsePoly]:
    """``y_s - 1`` followed by ``y_v - sum_(w,v) y_w * weight(w, v)`` in layer order."""
    idx = system.index
    incoming = dag.in_edges()
    eqs = [SparsePoly({((idx(_node_name(node_prefix, SOURCE)), 1),): 1, (): -1})]
    for v in dag.nodes[1:]:
        terms = {((idx(_node_name(node_prefix, v)), 1),): 1}
        for w, wt in incoming[v]:
            yw = idx(_node_name(node_prefix, w))
            if wt is None:
                key = ((yw, 1),)
            else:
                xk = idx(entry_name(*wt))
                key = tuple(sorted([(yw, 1), (xk, 1)]))
            terms[key] = terms.get(key, 0) - 1
        eqs.append(SparsePoly(terms))
    return eqs


def det_lifted_phi(n: int) -> int:
    """Closed form of ``phi_size(det_lifted(n).system)``.

    All coefficients are +-1 (2 bits).  ``y_s - 1`` costs 1 + 4 and
    ``z - y_tp + y_tm`` costs 1 + 6.  Every other node contributes its
    equation's degree plus 2 bits for itself and 2 per incoming edge; that
    degree is 2, except 1 for the layer-0 nodes (fed only by the weight-1
    source edges) and, when n = 1, for the edgeless ``t-``.
    """
    nodes, edges = mv_counts(n)
    node_eqs = nodes - 1
    linear = 2 if n == 1 else n - 1
    return 5 + (2 * node_eqs - linear) + 2 * (node_eqs + edges) + 7
