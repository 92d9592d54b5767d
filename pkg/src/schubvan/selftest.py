"""Named invariant suites run by ``schubvan selftest``.

Each suite returns the number of checks it made and raises
:class:`SuiteFailure` on the first violated invariant.  Output is a pure
function of the level, the seed and the injected fault, so two runs with the
same arguments print identical logs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, TextIO

import sympy

from .ff import MERSENNE_61
from .lift import (
    det_lifted,
    evaluate_lifted,
    leibniz_det,
    mv_counts,
    mv_graph,
    signed_path_sum,
)
from .perm import (
    all_perms,
    bruhat_leq,
    code_to_perm,
    compose,
    identity,
    inverse,
    lehmer_code,
    rank_matrix,
    rank_matrix_to_perm,
    reduced_word,
    word_to_perm,
)
from .poly import divided_difference
from .purbhoo import NONZERO_CERTIFIED, replay_witness, vanish_randomized
from .schubert import (
    expand_product,
    extract_coefficient,
    fast_filters,
    schubert_coefficient,
    schubert_dd,
    schubert_from_pipe_dreams,
)


class SuiteFailure(AssertionError):
    pass


@dataclass(frozen=True)
class Options:
    seed: int = 0
    flip_sinks: bool = False


def _check(ok: bool, message: str) -> None:
    if not ok:
        raise SuiteFailure(message)


def suite_perm(n: int, opts: Options) -> int:
    count = 0
    for w in all_perms(n):
        _check(code_to_perm(lehmer_code(w)).padded(n) == w, f"code round trip {w}")
        _check(rank_matrix_to_perm(rank_matrix(w)) == w, f"rank matrix round trip {w}")
        _check(compose(w, inverse(w)) == identity(n), f"inverse {w}")
        word = reduced_word(w)
        _check(len(word) == w.inv and word_to_perm(word, n) == w, f"reduced word {w}")
        count += 4
    return count


def suite_definitions(n: int, opts: Options) -> int:
    for w in all_perms(n):
        _check(schubert_from_pipe_dreams(w) == schubert_dd(w), f"pipe dreams vs divided differences {w}")
    return len(all_perms(n))


def suite_forward_rule(n: int, opts: Options) -> int:
    count = 0
    for w in all_perms(n):
        s = schubert_dd(w)
        for i in range(1, n + 1):
            if i not in w.descents:
                _check(divided_difference(i, s).is_zero(), f"d_{i} S_{w} != 0")
                count += 1
    return count


def suite_delta(n: int, opts: Options) -> int:
    count = 0
    perms = all_perms(n)
    for v in perms:
        sv = schubert_dd(v)
        for w in perms:
            if v.inv == w.inv:
                _check(extract_coefficient(sv, w) == int(v == w), f"delta property {v} {w}")
                count += 1
    return count


def suite_expansion(n: int, opts: Options) -> int:
    count = 0
    perms = all_perms(n)
    for u in perms:
        for v in perms:
            exp = expand_product(u, v)
            total = sum((c * schubert_dd(w) for w, c in exp.coeffs.items()), 0 * schubert_dd(u))
            _check(total == schubert_dd(u) * schubert_dd(v), f"reconstruction {u} {v}")
            _check(all(c > 0 for c in exp.coeffs.values()), f"positivity {u} {v}")
            count += 1
    return count


def suite_filters(n: int, opts: Options) -> int:
    count = 0
    perms = all_perms(n)
    for u in perms:
        for v in perms:
            for w in perms:
                if fast_filters(u, v, w).implies_vanishing:
                    _check(schubert_coefficient(u, v, w) == 0, f"filter unsound {u} {v} {w}")
                count += 1
    return count


def suite_purbhoo(n: int, opts: Options) -> int:
    count = 0
    perms = all_perms(n)
    for u in perms:
        for v in perms:
            for w in perms:
                if u.inv + v.inv != w.inv:
                    continue
                verdict = vanish_randomized(u, v, w, samples=3, seed=opts.seed)
                c = schubert_coefficient(u, v, w)
                _check((verdict.decision == NONZERO_CERTIFIED) == (c != 0), f"purbhoo {u} {v} {w}")
                if verdict.witness:
                    _check(replay_witness(u, v, w, verdict.witness) != 0, f"witness replay {u} {v} {w}")
                count += 1
    return count


def suite_leibniz(n: int, opts: Options) -> int:
    for k in range(1, n + 1):
        dag = mv_graph(k, flip_sinks=opts.flip_sinks)
        _check(signed_path_sum(dag) == leibniz_det(k), f"signed path sum != det for n={k}")
    return n


def suite_det_numeric(n: int, opts: Options, samples: int = 20) -> int:
    rng = random.Random(f"selftest/det/{opts.seed}")
    p = MERSENNE_61
    count = 0
    for k in range(1, n + 1):
        lift = det_lifted(k, dag=mv_graph(k, flip_sinks=opts.flip_sinks))
        for _ in range(samples):
            x = [[rng.randrange(p) for _ in range(k)] for _ in range(k)]
            assignment = {f"x_{i + 1}_{j + 1}": x[i][j] for i in range(k) for j in range(k)}
            z, _ = evaluate_lifted(lift, assignment, p)
            _check(z == int(sympy.Matrix(x).det(method="bareiss")) % p, f"lifted det mismatch n={k}")
            count += 1
    return count


def suite_sizes(n: int, opts: Options) -> int:
    for k in range(1, n + 1):
        dag = mv_graph(k, flip_sinks=opts.flip_sinks)
        _check((len(dag.nodes), len(dag.edges)) == mv_counts(k), f"size law n={k}")
    return n


Suite = tuple[str, Callable[[int, Options], int], int]

QUICK: list[Suite] = [
    ("permutations-s4", suite_perm, 4),
    ("definition-equivalence-s4", suite_definitions, 4),
    ("forward-rule-s4", suite_forward_rule, 4),
    ("delta-property-s4", suite_delta, 4),
    ("expansion-s4", suite_expansion, 4),
    ("filter-soundness-s4", suite_filters, 4),
    ("purbhoo-agreement-s4", suite_purbhoo, 4),
    ("leibniz-equality", suite_leibniz, 4),
    ("lifted-det-numeric", suite_det_numeric, 5),
    ("size-laws", suite_sizes, 12),
]

FULL: list[Suite] = QUICK + [
    ("permutations-s5", suite_perm, 5),
    ("definition-equivalence-s5", suite_definitions, 5),
    ("forward-rule-s5", suite_forward_rule, 5),
    ("delta-property-s5", suite_delta, 5),
    ("lifted-det-numeric-n8", suite_det_numeric, 8),
    ("size-laws-n20", suite_sizes, 20),
]


def run(level: str, opts: Options, out: TextIO) -> bool:
    """Run all suites of ``level``; print one line per suite; return overall success."""
    suites = QUICK if level == "quick" else FULL
    ok = True
    for name, fn, n in suites:
        try:
            count = fn(n, opts)
        except SuiteFailure as exc:
            ok = False
            print(f"FAIL {name}: {exc}", file=out)
        else:
            print(f"PASS {name}: {count} checks", file=out)
    print(f"selftest {level}: {'ok' if ok else 'FAILED'}", file=out)
    return ok
