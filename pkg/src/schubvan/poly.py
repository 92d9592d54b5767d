"""Sparse multivariate polynomials with exact integer coefficients.

A monomial is stored sparsely as a tuple of ``(index, exponent)`` pairs sorted
by index, with index 0 standing for ``x1``.  This is the trailing-zero-free
form of an exponent vector; ``dense(m)`` converts back.  Keeping monomials
sparse matters for the polynomial systems emitted by :mod:`schubvan.lift`,
which have thousands of variables but only a handful per term.

Monomials are totally ordered lexicographically on their dense exponent
vectors ``(e_1, e_2, ...)``, a larger leading entry being greater, so that
``x1 > x2 > x3 > ...`` and ``x1^2*x2 > x1*x2^5``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence, Union

__all__ = [
    "Monomial",
    "SparsePoly",
    "monomial",
    "dense",
    "mono_order_key",
    "add",
    "mul",
    "scalar_mul",
    "divided_difference",
    "coefficient",
    "bit_length",
]

Monomial = tuple[tuple[int, int], ...]
Names = Union[Sequence[str], Callable[[int], str], None]


def monomial(exponents: Sequence[int]) -> Monomial:
    """Sparse monomial from a dense exponent vector ``(e_1, e_2, ...)``."""
    if any(e < 0 for e in exponents):
        raise ValueError(f"negative exponent in {tuple(exponents)}")
    return tuple((i, e) for i, e in enumerate(exponents) if e)


def dense(m: Monomial, length: int | None = None) -> tuple[int, ...]:
    """Dense exponent vector of ``m``, trimmed of trailing zeros unless padded to ``length``."""
    size = m[-1][0] + 1 if m else 0
    if length is not None:
        size = max(size, length)
    out = [0] * size
    for i, e in m:
        out[i] = e
    return tuple(out)


def mono_order_key(m: Monomial) -> tuple[tuple[int, int], ...]:
    """Sort key realising the lex order on dense exponent vectors."""
    return tuple((-i, e) for i, e in m)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def bit_length(c: int) -> int:
    """Bits to store coefficient ``c``: ``ceil(log2(|c| + 1))`` plus a sign bit."""
    # ceil(log2(|c| + 1)) == |c|.bit_length() for integers
    return abs(c).bit_length() + 1


class SparsePoly:
    """Immutable polynomial ``sum c_m x^m`` over the integers.

    ``terms`` maps :data:`Monomial` keys to nonzero ``int`` coefficients.
    Arithmetic operators accept plain ints on either side.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms: dict[Monomial, int] = {
            m: int(c) for m, c in (terms or {}).items() if c
        }
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> SparsePoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> SparsePoly:
        return cls({(): c})

    @classmethod
    def var(cls, index: int, power: int = 1) -> SparsePoly:
        """The monomial ``x_{index+1}^power`` (``index`` is 0-based)."""
        return cls({((index, power),) if power else (): 1})

    @classmethod
    def from_dense(cls, terms: Mapping[Sequence[int], int]) -> SparsePoly:
        """Build from ``{(e_1, e_2, ...): coefficient}``."""
        out: dict[Monomial, int] = {}
        for exps, c in terms.items():
            m = monomial(exps)
            out[m] = out.get(m, 0) + c
        return cls(out)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def nvars(self) -> int:
        """Number of indeterminates ``x1..xk`` needed to write the polynomial."""
        return max((m[-1][0] + 1 for m in self._terms if m), default=0)

    def variables(self) -> set[int]:
        return {i for m in self._terms for i, _ in m}

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def coefficient(self, key: Sequence[int] | Monomial) -> int:
        return coefficient(self, key)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in descending canonical order."""
        return sorted(self._terms.items(), key=lambda t: mono_order_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, int]:
        """Largest term in the canonical order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=mono_order_key)
        return m, self._terms[m]

    def trailing_term(self) -> tuple[Monomial, int]:
        """Smallest term in the canonical order."""
        if not self._terms:
            raise ValueError("zero polynomial has no trailing term")
        m = min(self._terms, key=mono_order_key)
        return m, self._terms[m]

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, int):
            return SparsePoly.const(other)
        return NotImplemented

    def __add__(self, other) -> SparsePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparsePoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> SparsePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> SparsePoly:
        return (-self) + other

    def __mul__(self, other) -> SparsePoly:
        if isinstance(other, int):
            return scalar_mul(other, self)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return SparsePoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if k < 0:
            raise ValueError("negative power")
        result, base = SparsePoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SparsePoly.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- transformations ----------------------------------------------------

    def swap_vars(self, i: int) -> SparsePoly:
        """``s_i F``: exchange ``x_i`` and ``x_{i+1}`` (1-based ``i``)."""
        a, b = i - 1, i
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            ea, eb = d.pop(a, 0), d.pop(b, 0)
            if eb:
                d[a] = eb
            if ea:
                d[b] = ea
            out[tuple(sorted(d.items()))] = c
        return SparsePoly._raw(out)

    def evaluate(self, values: Mapping[int, int] | Sequence[int], modulus: int | None = None) -> int:
        """Evaluate at integer values indexed by 0-based variable index."""
        total = 0
        for m, c in self._terms.items():
            t = c
            for i, e in m:
                t *= pow(values[i], e, modulus) if modulus else values[i] ** e
            total += t
        return total % modulus if modulus else total

    # -- printing -----------------------------------------------------------

    def format(self, names: Names = None) -> str:
        """Render as ``c*x1^a*x2^b + ...`` in descending canonical order."""
        if not self._terms:
            return "0"
        if names is None:
            name = lambda i: f"x{i + 1}"  # noqa: E731
        elif callable(names):
            name = names
        else:
            name = names.__getitem__
        pieces = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            factors = [f"{name(i)}^{e}" if e > 1 else name(i) for i, e in m]
            body = "*".join([str(abs(c))] + factors)
            if k == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"SparsePoly({self.format()!r})"


def add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p + q


def mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p * q


def scalar_mul(c: int, p: SparsePoly) -> SparsePoly:
    if not c:
        return SparsePoly()
    return SparsePoly._raw({m: c * v for m, v in p.items()})


def coefficient(p: SparsePoly, key: Sequence[int] | Monomial) -> int:
    """Coefficient of a monomial given densely ``(e_1, e_2, ...)`` or sparsely."""
    key = tuple(key)
    if key and isinstance(key[0], tuple):
        m = key
    else:
        m = monomial(key)
    return p._terms.get(m, 0)


def divided_difference(i: int, p: SparsePoly) -> SparsePoly:
    """``(F - s_i F) / (x_i - x_{i+1})`` computed term by term.

    For a term ``R * x_i^a * x_{i+1}^b`` with ``a > b`` the quotient is
    ``R * (x_i x_{i+1})^b * sum_{k<a-b} x_i^(a-b-1-k) x_{i+1}^k``; the case
    ``a < b`` is the negative of the mirrored one and ``a == b`` gives zero.
    """
    if i < 1:
        raise ValueError(f"divided difference index must be >= 1, got {i}")
    xa, xb = i - 1, i
    out: dict[Monomial, int] = {}
    for m, c in p.items():
        d = dict(m)
        a, b = d.pop(xa, 0), d.pop(xb, 0)
        if a == b:
            continue
        if a < b:
            a, b, c = b, a, -c
        for k in range(a - b):
            e = dict(d)
            ea, eb = b + (a - b - 1 - k), b + k
            if ea:
                e[xa] = ea
            if eb:
                e[xb] = eb
            key = tuple(sorted(e.items()))
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return SparsePoly._raw(out)


def product(polys: Iterable[SparsePoly]) -> SparsePoly:
    result = SparsePoly.const(1)
    for f in polys:
        result = result * f
    return result
