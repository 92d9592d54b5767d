"""Schubert polynomials, pipe dreams and Schubert structure constants.

Three independent routes to the same polynomials live here:

* :func:`schubert_dd` -- divided differences down from the staircase
  monomial ``x1^(n-1) x2^(n-2) ... x_(n-1)``;
* :func:`pipe_dreams` -- enumeration of reduced pipe dreams (RC-graphs);
* :func:`forward_check` -- the annihilation rule ``∂_i S_w = 0`` for
  ascents ``i``.

Structure constants ``c^w_{u,v}`` come from expanding ``S_u * S_v`` in the
Schubert basis by repeated leading-term subtraction (:func:`expand_product`).
All Schubert polynomials are stable under appending fixed points, so
permutations are trimmed before caching.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotHomogeneous
from .perm import (
    Permutation,
    all_perms,
    bruhat_leq,
    code_to_perm,
    lehmer_code,
    long_element,
    pad,
    reduced_word,
)
from .poly import SparsePoly, dense, divided_difference

log = logging.getLogger(__name__)

__all__ = [
    "PipeDream",
    "SchubertExpansion",
    "FilterReport",
    "schubert_dd",
    "schubert_from_pipe_dreams",
    "pipe_dreams",
    "forward_check",
    "extract_coefficient",
    "expand_product",
    "schubert_coefficient",
    "vanish_exact",
    "fast_filters",
]


def staircase(n: int) -> SparsePoly:
    """``x1^(n-1) x2^(n-2) ... x_(n-1)``, the Schubert polynomial of the long element."""
    return SparsePoly({tuple((i, n - 1 - i) for i in range(n - 1)): 1})


@lru_cache(maxsize=None)
def _schubert_dd(window: tuple[int, ...]) -> SparsePoly:
    w = Permutation(window)
    n = w.n
    if window == long_element(n).window:
        return staircase(n)
    # climb one step towards w_0 through the first ascent; i is a descent of w*s_i
    i = next(k for k in range(1, n) if window[k - 1] < window[k])
    return divided_difference(i, _schubert_dd(w.swap_positions(i).window))


def schubert_dd(w: Permutation) -> SparsePoly:
    """Schubert polynomial of ``w`` by divided differences."""
    return _schubert_dd(w.trimmed().window)


# -- pipe dreams ---------------------------------------------------------------


@dataclass(frozen=True)
class PipeDream:
    """A reduced pipe dream: the set of cross tiles in the staircase of size n.

    Cells ``(i, j)`` with ``i + j <= n`` carry a cross or an elbow; the cells
    on the antidiagonal ``i + j = n + 1`` are half elbows.  Pipe ``k`` enters
    row ``k`` from the left and leaves through the top of column ``perm(k)``.
    """

    n: int
    crosses: frozenset[tuple[int, int]]
    perm: Permutation

    @property
    def weight(self) -> SparsePoly:
        """``x^H``: the product of ``x_i`` over crosses ``(i, j)``."""
        exps: dict[int, int] = {}
        for i, _ in self.crosses:
            exps[i - 1] = exps.get(i - 1, 0) + 1
        return SparsePoly({tuple(sorted(exps.items())): 1})

    def render(self) -> str:
        """ASCII picture, ``+`` for a cross and ``.`` for an elbow."""
        rows = []
        for i in range(1, max(self.n, 2)):
            rows.append("".join(
                "+" if (i, j) in self.crosses else "."
                for j in range(1, self.n + 1 - i)
            ))
        return "\n".join(rows)


@lru_cache(maxsize=8)
def _all_reduced_pipe_dreams(n: int) -> dict[tuple[int, ...], tuple[PipeDream, ...]]:
    """Every reduced tiling of the size-n staircase, grouped by permutation.

    Depth-first over cells, rows bottom to top and left to right within a
    row, so both inputs of a tile are known when it is decided.  A branch is
    cut as soon as two pipes would cross for the second time.
    """
    cells = [(i, j) for i in range(n - 1, 0, -1) for j in range(1, n + 1 - i)]
    found: dict[tuple[int, ...], list[PipeDream]] = {}
    crossed: set[tuple[int, int]] = set()
    chosen: list[tuple[int, int]] = []

    def record(exits: list[int]) -> None:
        window = [0] * n
        for col, pipe in enumerate(exits, start=1):
            window[pipe - 1] = col
        w = Permutation(tuple(window))
        found.setdefault(w.window, []).append(PipeDream(n, frozenset(chosen), w))

    # below: pipes leaving the tops of the row underneath, by column
    # built: pipes leaving the tops of the current row so far
    # left:  pipe travelling rightwards into the next cell
    def dfs(k: int, below: list[int], built: list[int], left: int) -> None:
        if k == len(cells):
            record(built + [left])
            return
        i, j = cells[k]
        if j == 1 and k > 0:
            # previous row ends in a half tile that turns ``left`` upwards
            below, built, left = built + [left], [], i
        bottom = below[j - 1]
        dfs(k + 1, below, built + [left], bottom)
        pair = (min(left, bottom), max(left, bottom))
        if pair not in crossed:
            crossed.add(pair)
            chosen.append((i, j))
            dfs(k + 1, below, built + [bottom], left)
            chosen.pop()
            crossed.discard(pair)

    if n == 1:
        record([1])
    else:
        # row n is a lone half tile sending pipe n up column 1
        dfs(0, [n], [], n - 1)
    return {w: tuple(ds) for w, ds in found.items()}


def pipe_dreams(w: Permutation) -> list[PipeDream]:
    """All reduced pipe dreams of ``w`` in the staircase of its trimmed degree."""
    w = w.trimmed()
    return list(_all_reduced_pipe_dreams(w.n).get(w.window, ()))


def schubert_from_pipe_dreams(w: Permutation) -> SparsePoly:
    total = SparsePoly()
    for d in pipe_dreams(w):
        total = total + d.weight
    return total


def forward_check(w: Permutation) -> bool:
    """True iff ``∂_i S_w = 0`` for every ascent ``i`` of ``w`` in ``1..n``."""
    s = schubert_dd(w)
    return all(
        divided_difference(i, s).is_zero()
        for i in range(1, w.n + 1)
        if i not in w.descents
    )


# -- structure constants -------------------------------------------------------


def extract_coefficient(f: SparsePoly, w: Permutation) -> int:
    """Coefficient of ``S_w`` in the Schubert expansion of ``f``.

    ``f`` must be homogeneous of degree ``inv(w)``.  With ``(a_1, ..., a_l)``
    the lex-smallest reduced word of ``w`` the operator
    ``∂_{a_1} ... ∂_{a_l}`` (rightmost applied first) sends ``S_w`` to 1 and
    every other ``S_v`` of the same degree to 0.
    """
    if not f.is_zero() and (not f.is_homogeneous() or f.degree() != w.inv):
        raise NotHomogeneous(f"expected a homogeneous polynomial of degree {w.inv}")
    for a in reversed(reduced_word(w)):
        f = divided_difference(a, f)
    assert f.is_constant()
    return f.constant_term()


@dataclass(frozen=True)
class SchubertExpansion:
    """``S_u * S_v = sum_w coeffs[w] * S_w`` with every ``w`` trimmed."""

    coeffs: dict[Permutation, int]
    degree: int

    def get(self, w: Permutation) -> int:
        return self.coeffs.get(w.trimmed(), 0)

    def display_degree(self, at_least: int = 1) -> int:
        return max([at_least] + [w.n for w in self.coeffs])

    def lines(self, at_least: int = 1) -> list[str]:
        """``w<TAB>c`` lines, ``w`` padded to a common degree, sorted by window."""
        n = self.display_degree(at_least)
        rows = sorted(((w.padded(n).window, str(w.padded(n)), c) for w, c in self.coeffs.items()))
        return [f"{s}\t{c}" for _, s, c in rows]


@lru_cache(maxsize=1)
def _code_term_guard() -> None:
    """Smallest term of ``S_w`` is ``x^code(w)`` with coefficient 1 (checked on S_5).

    Every other pipe dream of ``w`` arises from the left-justified one by
    moving crosses to higher rows, i.e. to lower-index variables, so all
    other monomials are larger in the canonical order.
    """
    for w in all_perms(5):
        m, c = schubert_dd(w).trailing_term()
        code = lehmer_code(w.trimmed())
        if c != 1 or dense(m, len(code)) != code:
            raise AssertionError(f"leading term of S_{w} is not x^{code}")


@lru_cache(maxsize=4096)
def _expand(u: tuple[int, ...], v: tuple[int, ...]) -> SchubertExpansion:
    _code_term_guard()
    rest = schubert_dd(Permutation(u)) * schubert_dd(Permutation(v))
    degree = rest.degree()
    coeffs: dict[Permutation, int] = {}
    while not rest.is_zero():
        # the smallest monomial of a Schubert-basis combination is x^code(w)
        # for exactly one w in its support, with coefficient c^w
        m, c = rest.trailing_term()
        w = code_to_perm(dense(m)).trimmed()
        if c <= 0 or w in coeffs:
            raise AssertionError(f"Schubert expansion of S_{u}*S_{v} failed at {w}")
        coeffs[w] = c
        rest = rest - c * schubert_dd(w)
    return SchubertExpansion(coeffs, degree)


def expand_product(u: Permutation, v: Permutation) -> SchubertExpansion:
    """Schubert-basis expansion of ``S_u * S_v``, peeling off ``x^code(w)`` terms."""
    return _expand(u.trimmed().window, v.trimmed().window)


def schubert_coefficient(u: Permutation, v: Permutation, w: Permutation) -> int:
    """``c^w_{u,v}``; zero without any work when ``inv(u) + inv(v) != inv(w)``."""
    if u.inv + v.inv != w.inv:
        return 0
    return expand_product(u, v).get(w)


def vanish_exact(u: Permutation, v: Permutation, w: Permutation) -> bool:
    return schubert_coefficient(u, v, w) == 0


@dataclass(frozen=True)
class FilterReport:
    """Outcome of the cheap necessary conditions for ``c^w_{u,v} != 0``.

    A failing filter proves vanishing; passing filters prove nothing.
    """

    dimension: bool
    bruhat_u: bool
    bruhat_v: bool

    @property
    def bruhat(self) -> bool:
        return self.bruhat_u and self.bruhat_v

    @property
    def implies_vanishing(self) -> bool:
        return not (self.dimension and self.bruhat)

    def summary(self) -> str:
        word = {True: "pass", False: "fail"}
        return f"dimension={word[self.dimension]} bruhat={word[self.bruhat]}"


def fast_filters(u: Permutation, v: Permutation, w: Permutation) -> FilterReport:
    u, v, w = pad(u, v, w)
    return FilterReport(
        dimension=u.inv + v.inv == w.inv,
        bruhat_u=bruhat_leq(u, w),
        bruhat_v=bruhat_leq(v, w),
    )
