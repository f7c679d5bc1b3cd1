"""Obstruction equations for triangle- and grid-freeness, set search, and
density reports.

Equations (all over F_p):

* ``mult-triangle``: x in X, pairwise distinct a, b, c in A with (x + a - b) b = x c
* ``quad-triangle``: pairwise distinct a, b, c in A with a + c^2 - c = b^2
* ``quad-grid``: x1, x2 in X, a in A with 4 x1 + 4 a = 4 x2 + 1

Tuples are ordered; a solution to ``mult-triangle`` is (x, a, b, c), to
``quad-triangle`` (a, b, c) and to ``quad-grid`` (x1, x2, a).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .constructions import SetSpec, build_multiplicative
from .detect import triangle_count
from .ffield import FieldElement, check_prime, inv_mod
from .hypergraph import TripartiteHypergraph, is_linear

KINDS = ("mult-triangle", "quad-triangle", "quad-grid")
WITNESS_CAP = 10


class ObstructionError(ValueError):
    pass


def _check_kind(kind):
    if kind not in KINDS:
        raise ObstructionError(f"unknown equation {kind!r}; expected one of {', '.join(KINDS)}")


def iter_solutions(kind: str, p: int, X, A):
    """Yield every solution tuple of ``kind`` with variables drawn from X and A.

    X and A are iterables of ints already reduced mod p.
    """
    _check_kind(kind)
    X = sorted(set(X))
    A = sorted(set(A))
    Aset = set(A)
    if kind == "mult-triangle":
        for x in X:
            xinv = pow(x, -1, p) if x else None
            for a in A:
                for b in A:
                    if b == a:
                        continue
                    lhs = (x + a - b) * b % p
                    if xinv is not None:
                        c = lhs * xinv % p
                        if c in Aset and c != a and c != b:
                            yield (x, a, b, c)
                    elif lhs == 0:
                        for c in A:
                            if c != a and c != b:
                                yield (x, a, b, c)
    elif kind == "quad-triangle":
        for b in A:
            for c in A:
                if c == b:
                    continue
                a = (b * b - c * c + c) % p
                if a in Aset and a != b and a != c:
                    yield (a, b, c)
    else:
        Xset = set(X)
        quarter = inv_mod(4, p)
        for x1 in X:
            for a in A:
                x2 = (x1 + a - quarter) % p
                if x2 in Xset:
                    yield (x1, x2, a)


def check_solution(kind: str, p: int, sol, X, A) -> bool:
    """Verify one solution by direct field evaluation and membership."""
    F = lambda v: FieldElement(v, p)  # noqa: E731
    X, A = set(X), set(A)
    if kind == "mult-triangle":
        x, a, b, c = sol
        return (x in X and {a, b, c} <= A and len({a, b, c}) == 3
                and (F(x) + F(a) - F(b)) * F(b) == F(x) * F(c))
    if kind == "quad-triangle":
        a, b, c = sol
        return {a, b, c} <= A and len({a, b, c}) == 3 and F(a) + F(c) ** 2 - F(c) == F(b) ** 2
    if kind == "quad-grid":
        x1, x2, a = sol
        return x1 in X and x2 in X and a in A and 4 * F(x1) + 4 * F(a) == 4 * F(x2) + 1
    raise ObstructionError(f"unknown equation {kind!r}")


@dataclass
class SolutionReport:
    kind: str
    p: int
    x_set: str
    a_set: str
    X: tuple[int, ...]
    A: tuple[int, ...]
    count: int
    witnesses: list[tuple[int, ...]] = field(default_factory=list)
    witness_cap: int = WITNESS_CAP
    exhaustive: bool = True

    def to_dict(self) -> dict:
        return {
            "equation": self.kind,
            "p": self.p,
            "x_set": self.x_set,
            "a_set": self.a_set,
            "x_size": len(self.X),
            "a_size": len(self.A),
            "count": self.count,
            "witnesses": [list(w) for w in self.witnesses],
            "witness_cap": self.witness_cap,
            "exhaustive": self.exhaustive,
        }


def _solve(kind, p, X, A, x_label, a_label, cap):
    count, wit = 0, []
    for sol in iter_solutions(kind, p, X, A):
        count += 1
        if len(wit) < cap:
            wit.append(sol)
    return SolutionReport(kind, p, x_label, a_label, tuple(X), tuple(A), count, wit, cap)


def count_solutions(kind: str, p: int, Xspec="nonzero", Aspec="nonzero",
                    witness_cap: int = WITNESS_CAP) -> SolutionReport:
    """Exhaustive solution count. quad-triangle ignores X."""
    _check_kind(kind)
    check_prime(p)
    Xspec, Aspec = SetSpec.coerce(Xspec), SetSpec.coerce(Aspec)
    X, A = Xspec.resolve(p), Aspec.resolve(p)
    if not A or (kind != "quad-triangle" and not X):
        raise ObstructionError("resolved set is empty")
    return _solve(kind, p, X, A, str(Xspec), str(Aspec), witness_cap)


@dataclass
class TriangleConsistency:
    p: int
    equation_count: int
    restricted_count: int
    triangle_copies: int
    zero_excluded: bool

    @property
    def implication_holds(self) -> bool:
        """No equation solutions forces no triangles."""
        return self.equation_count > 0 or self.triangle_copies == 0

    @property
    def exact_match(self) -> bool | None:
        """With 0 outside X and A, triangles correspond one-to-one to solutions
        whose third X-vertex x + a - b also lies in X."""
        if not self.zero_excluded:
            return None
        return self.restricted_count == self.triangle_copies

    def to_dict(self) -> dict:
        return {"p": self.p, "equation_count": self.equation_count,
                "restricted_count": self.restricted_count,
                "triangle_copies": self.triangle_copies,
                "implication_holds": self.implication_holds, "exact_match": self.exact_match}


def triangle_obstruction_consistency(p: int, Xspec="nonzero", Aspec="nonzero") -> TriangleConsistency:
    """Compare mult-triangle solutions against triangle copies in H(X, A)."""
    rep = count_solutions("mult-triangle", p, Xspec, Aspec, witness_cap=0)
    Xset = set(rep.X)
    restricted = sum(1 for x, a, b, c in iter_solutions("mult-triangle", p, rep.X, rep.A)
                     if (x + a - b) % p in Xset)
    H = build_multiplicative(p, Xspec, Aspec)
    tri = triangle_count(H)
    return TriangleConsistency(p, rep.count, restricted, tri, 0 not in Xset and 0 not in rep.A)


# -- set search ------------------------------------------------------------


@dataclass
class SetSearchResult:
    kind: str
    p: int
    strategy: str
    seed: int
    X: tuple[int, ...]
    A: tuple[int, ...]
    report: SolutionReport

    def to_dict(self) -> dict:
        return {"equation": self.kind, "p": self.p, "strategy": self.strategy, "seed": self.seed,
                "X": list(self.X), "A": list(self.A), "a_size": len(self.A),
                "solutions": self.report.to_dict()}


def _spec_of(values) -> str:
    return "list:" + ",".join(str(v) for v in values)


def search_sets(p: int, kind: str, strategy: str = "greedy", seed: int = 0,
                x_spec=None) -> SetSearchResult:
    """Grow a solution-free A (and X, when tied) for equation ``kind``.

    With ``x_spec`` None the sets are tied (X = A, as in X = A = {1..k}); otherwise
    X is fixed and only A grows. quad-triangle uses A alone. Strategies:
    ``greedy`` adds candidates in ascending order, ``randomized-greedy`` in a
    seeded shuffle, ``interval`` takes the longest {1..k}.
    """
    _check_kind(kind)
    check_prime(p)
    if strategy not in ("greedy", "randomized-greedy", "interval"):
        raise ObstructionError(f"unknown strategy {strategy!r}")
    tied = x_spec is None and kind != "quad-triangle"
    fixed_X = () if x_spec is None else SetSpec.coerce(x_spec).resolve(p)
    # 0 makes x * a degenerate in the multiplicative construction
    start = 1 if kind in ("mult-triangle", "quad-grid") else 0
    candidates = list(range(start, p))

    def sets_for(A):
        if kind == "quad-triangle":
            return A, A
        return (A if tied else fixed_X), A

    def clean(A):
        X, A_ = sets_for(A)
        if kind != "quad-triangle" and not X:
            return True
        return next(iter_solutions(kind, p, X, A_), None) is None

    A: list[int] = []
    if strategy == "interval":
        for k in range(1, p):
            trial = list(range(1, k + 1))
            if not clean(trial):
                break
            A = trial
    else:
        if strategy == "randomized-greedy":
            random.Random(seed).shuffle(candidates)
        for v in candidates:
            if clean(A + [v]):
                A.append(v)
        A.sort()
    X, A_ = sets_for(A)
    X = tuple(sorted(X))
    rep = _solve(kind, p, X, tuple(A_), _spec_of(X), _spec_of(A_), WITNESS_CAP)
    if rep.count:
        raise AssertionError("search returned sets with solutions")
    return SetSearchResult(kind, p, strategy, seed, X, tuple(A_), rep)


# -- density -------------------------------------------------------------


def density_report(H: TripartiteHypergraph) -> dict:
    v, e = H.num_vertices, H.num_edges
    ratio = e / (v * v) if v else 0.0
    return {
        "vertices": v,
        "edges": e,
        "parts": [len(H.X), len(H.Y), len(H.Z)],
        "edge_density": ratio,
        "linear": is_linear(H),
        "target_1_16": 1 / 16,
        "target_1_18": 1 / 18,
        "fraction_of_1_16": ratio * 16,
        "fraction_of_1_18": ratio * 18,
    }
