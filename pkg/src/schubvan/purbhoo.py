"""Randomized Schubert vanishing via Purbhoo's span criterion.

For generic unipotent ``rho, omega, tau`` the coefficient ``c^w_{u,v}`` is
nonzero exactly when

    rho R_u rho^-1 + omega R_v omega^-1 + tau R_{w0 w} tau^-1

spans the strictly upper triangular matrices, where ``R_pi`` is spanned by
the elementary matrices ``e_ij`` over the inversions of ``pi``.  When
``inv(u) + inv(v) = inv(w)`` the three spanning sets together have exactly
``C(n, 2)`` elements, so spanning is ``det M != 0`` for the square matrix
``M`` of their strict-upper coordinates.

``det M`` is a polynomial in the witness entries.  One nonzero evaluation
proves the polynomial nonzero (a certificate of ``c != 0``); all-zero
evaluations only bound the chance that ``c != 0`` was missed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Literal

import sympy

from .errors import BadPrime, DimensionMismatch
from .ff import MERSENNE_61, check_prime, ff_det, ff_rank
from .lift import PolySystem, _node_name, det_equations, forward_solve, mv_graph, phi_size
from .perm import Permutation, compose, long_element, pad
from .poly import SparsePoly

__all__ = [
    "InversionSupport",
    "UnipotentMatrix",
    "PurbhooMatrix",
    "VanishVerdict",
    "Witness",
    "NONZERO_CERTIFIED",
    "ZERO_WHP",
    "MIN_PRIME",
    "inversion_support",
    "opposite",
    "random_unipotent",
    "assemble_matrix",
    "degree_bound",
    "vanish_randomized",
    "replay_witness",
    "emit_hnp_system",
    "hnp_generic_satisfiable",
]

NONZERO_CERTIFIED = "NONZERO_CERTIFIED"
ZERO_WHP = "ZERO_WHP"
MIN_PRIME = 2**60


@dataclass(frozen=True)
class InversionSupport:
    """Cells ``(i, j)``, ``i < j``, ``w(i) > w(j)``: a basis of ``R_w`` by ``e_ij``."""

    n: int
    cells: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.cells)


def inversion_support(w: Permutation) -> InversionSupport:
    return InversionSupport(w.n, w.inversions)


def opposite(w: Permutation) -> Permutation:
    """``w0 ∘ w``, i.e. ``i -> n + 1 - w(i)``."""
    return compose(long_element(w.n), w)


def upper_cells(n: int) -> list[tuple[int, int]]:
    """Strict-upper positions in lex order: the coordinates of ``n``."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class UnipotentMatrix:
    """Upper unitriangular matrix given by its strict-upper entries.

    Entries are integers, reduced mod ``modulus`` when one is set.
    """

    n: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    modulus: int | None = None

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if i == j:
            return 1
        if i > j:
            return 0
        return self.entries.get((i, j), 0)

    def rows(self) -> list[list[int]]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def inverse(self) -> UnipotentMatrix:
        """Back-substitution on ``U V = I``, by increasing distance from the diagonal."""
        p = self.modulus
        inv: dict[tuple[int, int], int] = {}
        for gap in range(1, self.n):
            for i in range(1, self.n + 1 - gap):
                j = i + gap
                s = self[i, j] + sum(self[i, t] * inv[t, j] for t in range(i + 1, j))
                inv[i, j] = -s % p if p else -s
        return UnipotentMatrix(self.n, inv, p)

    def __matmul__(self, other: UnipotentMatrix) -> list[list[int]]:
        p = self.modulus
        out = []
        for i in range(1, self.n + 1):
            row = []
            for j in range(1, self.n + 1):
                s = sum(self[i, t] * other[t, j] for t in range(1, self.n + 1))
                row.append(s % p if p else s)
            out.append(row)
        return out


def random_unipotent(n: int, p: int, rng: random.Random) -> tuple[UnipotentMatrix, UnipotentMatrix]:
    """Uniform strict-upper entries in ``F_p``, with the exact inverse."""
    check_prime(p)
    entries = {cell: rng.randrange(p) for cell in upper_cells(n)}
    rho = UnipotentMatrix(n, entries, p)
    inv = rho.inverse()
    if rho @ inv != [[int(i == j) for j in range(n)] for i in range(n)]:
        raise AssertionError("unipotent inverse check failed")
    return rho, inv


@dataclass(frozen=True)
class PurbhooMatrix:
    """Square matrix whose columns are the conjugated basis elements.

    Column ``c`` holds the strict-upper coordinates of ``g e_ij g^-1``
    for the ``c``-th cell in ``labels``; ``labels[c] = (source, (i, j))``
    with ``source`` one of ``"u"``, ``"v"``, ``"w"``.
    """

    n: int
    columns: list[list[int]]
    labels: list[tuple[str, tuple[int, int]]]
    modulus: int | None = None

    @property
    def size(self) -> int:
        return len(self.columns)

    def det(self) -> int:
        if self.modulus:
            return ff_det(self.columns, self.modulus)
        if not self.columns:
            return 1
        return int(sympy.Matrix(self.columns).det(method="bareiss"))

    def rank(self) -> int:
        if self.modulus:
            return ff_rank(self.columns, self.modulus)
        if not self.columns:
            return 0
        return sympy.Matrix(self.columns).rank()


def _conjugated_column(g: UnipotentMatrix, g_inv: UnipotentMatrix, i: int, j: int) -> list[int]:
    # g e_ij g^-1 = (column i of g) x (row j of g^-1)
    p = g.modulus
    col = [g[k, i] * g_inv[j, l] for k, l in upper_cells(g.n)]
    return [a % p for a in col] if p else col


def assemble_matrix(
    u: Permutation,
    v: Permutation,
    w: Permutation,
    rho: UnipotentMatrix,
    omega: UnipotentMatrix,
    tau: UnipotentMatrix,
) -> PurbhooMatrix:
    """Build ``M`` for the triple at the given witnesses (scalings set to 1)."""
    u, v, w = pad(u, v, w)
    n = u.n
    if u.inv + v.inv != w.inv:
        raise DimensionMismatch(f"inv({u}) + inv({v}) != inv({w})")
    if not rho.n == omega.n == tau.n == n:
        raise DimensionMismatch("witness matrices must have the permutations' degree")
    columns, labels = [], []
    for tag, perm, g in (("u", u, rho), ("v", v, omega), ("w", opposite(w), tau)):
        g_inv = g.inverse()
        for i, j in perm.inversions:
            columns.append(_conjugated_column(g, g_inv, i, j))
            labels.append((tag, (i, j)))
    assert len(columns) == comb(n, 2)
    return PurbhooMatrix(n, columns, labels, rho.modulus)


def degree_bound(n: int) -> int:
    """Total degree bound for ``det M`` in the witness entries.

    Entry ``(k, l)`` of ``g e_ij g^-1`` is ``g_ki (g^-1)_jl``: degree at most
    1 + (l - j) <= n - 1 since ``j >= 2``.  ``M`` has ``C(n, 2)`` columns.
    """
    return max(n - 1, 0) * comb(n, 2)


@dataclass(frozen=True)
class Witness:
    """Everything needed to regenerate a full-rank evaluation."""

    prime: int
    seed: int
    sample: int
    rho: dict[tuple[int, int], int]
    omega: dict[tuple[int, int], int]
    tau: dict[tuple[int, int], int]
    det: int


@dataclass(frozen=True)
class VanishVerdict:
    decision: Literal["NONZERO_CERTIFIED", "ZERO_WHP"]
    samples_used: int
    error_bound: Fraction
    prime: int
    seed: int
    witness: Witness | None = None

    def record(self) -> str:
        eb = self.error_bound
        return (
            f"decision={self.decision} samples={self.samples_used} prime={self.prime} "
            f"seed={self.seed} error_bound={eb.numerator}/{eb.denominator}"
        )


def _sample_rng(seed: int, sample: int) -> random.Random:
    # one independent stream per sample, derived only from (seed, sample)
    return random.Random(f"schubvan/purbhoo/{seed}/{sample}")


def _draw_witnesses(n: int, prime: int, seed: int, sample: int):
    rng = _sample_rng(seed, sample)
    return tuple(random_unipotent(n, prime, rng)[0] for _ in range(3))


def vanish_randomized(
    u: Permutation,
    v: Permutation,
    w: Permutation,
    samples: int = 3,
    prime: int = MERSENNE_61,
    seed: int = 0,
) -> VanishVerdict:
    """One-sided Monte Carlo test of ``c^w_{u,v} = 0``.

    ``NONZERO_CERTIFIED`` is always correct.  ``ZERO_WHP`` is wrong with
    probability at most ``(degree_bound(n) / prime) ** samples``; it is exact
    (bound 0) when the inversion counts already force vanishing.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if prime <= MIN_PRIME:
        raise BadPrime(f"prime must exceed 2^60, got {prime}")
    check_prime(prime)
    u, v, w = pad(u, v, w)
    if u.inv + v.inv != w.inv:
        return VanishVerdict(ZERO_WHP, 0, Fraction(0), prime, seed)
    n = u.n
    for s in range(samples):
        rho, omega, tau = _draw_witnesses(n, prime, seed, s)
        d = assemble_matrix(u, v, w, rho, omega, tau).det()
        if d:
            witness = Witness(prime, seed, s, rho.entries, omega.entries, tau.entries, d)
            return VanishVerdict(NONZERO_CERTIFIED, s + 1, Fraction(0), prime, seed, witness)
    bound = Fraction(degree_bound(n), prime) ** samples
    return VanishVerdict(ZERO_WHP, samples, bound, prime, seed)


def replay_witness(u: Permutation, v: Permutation, w: Permutation, witness: Witness) -> int:
    """Regenerate the witness from ``(prime, seed, sample)`` and recompute ``det M``."""
    u, v, w = pad(u, v, w)
    rho, omega, tau = _draw_witnesses(u.n, witness.prime, witness.seed, witness.sample)
    if (rho.entries, omega.entries, tau.entries) != (witness.rho, witness.omega, witness.tau):
        raise AssertionError("witness entries do not match their seed")
    return assemble_matrix(u, v, w, rho, omega, tau).det()


# -- HNP instance --------------------------------------------------------------

Scalings = Literal["unit", "keep"]


def _witness_names(letter: str, n: int) -> list[str]:
    return [f"{letter}_{i}_{j}" for i, j in upper_cells(n)]


def emit_hnp_system(
    u: Permutation,
    v: Permutation,
    w: Permutation,
    scalings: Scalings = "unit",
) -> PolySystem:
    """The system ``S(u, v, w0 w)``: solvable for generic parameters iff ``c^w_{u,v} = 0``.

    Parameters ``alpha/beta/gamma_i_j`` are the witnesses, variables
    ``a/b/c_i_j`` their inverses, ``m_r_c`` the entries of ``M`` (row = strict-upper
    coordinate, column = basis element) and ``d_*`` the nodes of the lifted
    determinant, whose last equation demands ``det M = 0``.

    ``scalings="keep"`` adds a variable ``x/y/z_i_j`` multiplying each basis
    element, as in the literal construction; note that this system is then
    always solvable (all scalings 0), so only ``"unit"`` carries the
    vanishing semantics.
    """
    u, v, w = pad(u, v, w)
    n = u.n
    if u.inv + v.inv != w.inv:
        raise DimensionMismatch(f"inv({u}) + inv({v}) != inv({w})")
    if scalings not in ("unit", "keep"):
        raise ValueError(f"unknown scalings mode {scalings!r}")
    size = comb(n, 2)
    blocks = [
        ("u", u, "alpha", "a", "x"),
        ("v", v, "beta", "b", "y"),
        ("w", opposite(w), "gamma", "c", "z"),
    ]
    dag = mv_graph(size) if size else None
    variables: list[str] = []
    for _, _, _, inv_letter, _ in blocks:
        variables += _witness_names(inv_letter, n)
    if scalings == "keep":
        for _, perm, _, _, sc in blocks:
            variables += [f"{sc}_{i}_{j}" for i, j in perm.inversions]
    entries = [f"m_{r}_{c}" for r in range(1, size + 1) for c in range(1, size + 1)]
    variables += entries
    if dag:
        variables += [_node_name("d", node) for node in dag.nodes]
    parameters: list[str] = []
    for _, _, par, _, _ in blocks:
        parameters += _witness_names(par, n)
    system = PolySystem(variables, parameters)
    term = system.term

    def g_entry(par: str, k: int, i: int) -> SparsePoly | int:
        return 1 if k == i else (term(f"{par}_{k}_{i}") if k < i else 0)

    # g * g~ = Id, solved for g~ by increasing distance from the diagonal
    for _, _, par, inv_letter, _ in blocks:
        for gap in range(1, n):
            for i in range(1, n + 1 - gap):
                j = i + gap
                f = term(f"{inv_letter}_{i}_{j}") + term(f"{par}_{i}_{j}")
                for t in range(i + 1, j):
                    f = f + term(f"{par}_{i}_{t}", f"{inv_letter}_{t}_{j}")
                system.add(f)

    # m_rc = (scaling) * g_ki * g~_jl for coordinate r = (k, l), basis element c = e_ij
    coords = upper_cells(n)
    col = 0
    for _, perm, par, inv_letter, sc in blocks:
        for i, j in perm.inversions:
            col += 1
            for r, (k, l) in enumerate(coords, start=1):
                left = g_entry(par, k, i)
                right = 1 if j == l else (term(f"{inv_letter}_{j}_{l}") if j < l else 0)
                entry = left * right
                if scalings == "keep":
                    entry = entry * term(f"{sc}_{i}_{j}")
                system.add(term(f"m_{r}_{col}") - entry)

    if dag:
        system.equations.extend(
            det_equations(system, dag, lambda r, c: f"m_{r}_{c}", "d")
        )
        system.add(term("d_tp") - term("d_tm"))
    else:
        # 0 x 0 matrix: det M = 1, never zero
        system.add(SparsePoly.const(1))
    return system


def hnp_generic_satisfiable(system: PolySystem, prime: int = MERSENNE_61, seed: int = 0) -> bool:
    """Instantiate all parameters at random in ``F_p`` and forward-solve.

    Every variable is then determined, so the system is solvable at this
    parameter point iff the final ``det M = 0`` check holds.
    """
    rng = random.Random(f"schubvan/hnp/{seed}")
    known = {name: rng.randrange(prime) for name in system.parameters}
    return forward_solve(system, known, prime).satisfied


def hnp_phi(u: Permutation, v: Permutation, w: Permutation) -> int:
    return phi_size(emit_hnp_system(u, v, w))
