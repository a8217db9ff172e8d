"""Constructive counterpart of the counting bounds.

Exhaustive enumeration of nested code pairs with per-error undetectable
tallies, brute-force asymmetric distances, detectability tests for
stabilizer codes, seeded random samplers, and the randomized witness
search that turns the existence argument into actual codes.

All enumerations are guarded; this module is for desk-scale verification,
not scalability.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from pathlib import Path
from random import Random
from typing import Iterator, Mapping, Union

from .bounds import CssBoundQuery, StabBoundQuery, ball_sum, gaussian_binomial
from .errors import (
    DomainError,
    EnumerationSizeError,
    InputShapeError,
    ParameterRangeError,
)
from .fields import GF, Subspace, Vec, _iter_span, vec_add, vec_scale, weight

PAIR_GUARD = 10**6          # nested pairs enumerated at once
ERROR_TABLE_GUARD = 10**6   # nonzero error vectors tallied at once
PROFILE_GUARD = 10**7       # (ex, ez) patterns checked by one profile call
COSET_GUARD = 2**26         # codewords enumerated by one distance call


@dataclass(frozen=True)
class NestedPair:
    """A nested pair C2 <= C1 of codes in GF(q)^n (the CSS ingredient)."""

    c1: Subspace
    c2: Subspace

    def __post_init__(self) -> None:
        if self.c1.field != self.c2.field or self.c1.ambient_dim != self.c2.ambient_dim:
            raise InputShapeError("C1 and C2 must share field and length")
        if not self.c1.contains_space(self.c2):
            raise InputShapeError("C2 must be a subspace of C1")

    @property
    def n(self) -> int:
        return self.c1.ambient_dim

    @property
    def q(self) -> int:
        return self.c1.field.p


@dataclass(frozen=True)
class IsotropicCode:
    """A symplectic self-orthogonal subspace of GF(q)^{2n}: an [[n, k]]_q
    stabilizer code with k = n - dim."""

    c: Subspace

    def __post_init__(self) -> None:
        if self.c.ambient_dim % 2:
            raise InputShapeError("stabilizer space needs an even ambient dimension")
        if not self.stabilizer_dual.contains_space(self.c):
            raise InputShapeError("generators are not symplectic self-orthogonal")

    @cached_property
    def stabilizer_dual(self) -> Subspace:
        return self.c.symplectic_dual()

    @property
    def n(self) -> int:
        return self.c.ambient_dim // 2

    @property
    def k(self) -> int:
        return self.n - self.c.dim

    @property
    def q(self) -> int:
        return self.c.field.p


@dataclass(frozen=True)
class DistancePair:
    """Minimum undetectable weights; None means the undetectable set is empty."""

    dx: int | None
    dz: int | None

    def meets(self, dx: int, dz: int) -> bool:
        """Whether the code qualifies at design distances (dx, dz)."""
        return (self.dx is None or self.dx >= dx) and (self.dz is None or self.dz >= dz)


@dataclass(frozen=True)
class EnumerationReport:
    """Exact tallies over every nested pair with the given dimensions."""

    q: int
    n: int
    k1: int
    k2: int
    total_pairs: int
    per_error_x: Mapping[Vec, int]
    per_error_z: Mapping[Vec, int]

    def expected_counts(self) -> tuple[int, int]:
        """Per-error counts implied by the counting identities (exact)."""
        denom = self.q**self.n - 1
        x = Fraction((self.q**self.k1 - self.q**self.k2) * self.total_pairs, denom)
        z = Fraction(
            (self.q ** (self.n - self.k2) - self.q ** (self.n - self.k1)) * self.total_pairs,
            denom,
        )
        if x.denominator != 1 or z.denominator != 1:
            return (-1, -1)  # identities cannot hold
        return (x.numerator, z.numerator)

    @property
    def identities_hold(self) -> bool:
        x, z = self.expected_counts()
        return all(v == x for v in self.per_error_x.values()) and all(
            v == z for v in self.per_error_z.values()
        )


def iter_subspaces(field: GF, ambient_dim: int, dim: int) -> Iterator[Subspace]:
    """Every dim-dimensional subspace of GF(p)^ambient_dim exactly once.

    Enumerates canonical RREF matrices directly: a choice of pivot columns
    plus arbitrary entries in the free cells.
    """
    n, k, q = ambient_dim, dim, field.p
    if not 0 <= k <= n:
        raise ParameterRangeError(f"need 0 <= dim <= ambient, got dim={k}, ambient={n}")
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivot_set]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, col in enumerate(pivots):
                rows[i][col] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(field, n, tuple(tuple(r) for r in rows))


def _complement_rows(big: Subspace, small: Subspace) -> list[Vec]:
    """Rows extending a basis of small to one of big (assumes small <= big)."""
    cur = small
    rows: list[Vec] = []
    for row in big.basis:
        if not cur.contains(row):
            rows.append(row)
            cur = Subspace.span(big.field, big.ambient_dim, cur.basis + (row,))
    return rows


def _iter_difference(big: Subspace, small: Subspace) -> Iterator[Vec]:
    """All vectors of big \\ small (assumes small <= big); never yields zero."""
    p = big.field.p
    n = big.ambient_dim
    d_rows = _complement_rows(big, small)
    if not d_rows:
        return
    # Materialize the small span when cheap; it is re-walked per coset.
    small_cached = (
        list(_iter_span(small.basis, p, n)) if p**small.dim <= 1 << 16 else None
    )
    for coeffs in product(range(p), repeat=len(d_rows)):
        if not any(coeffs):
            continue
        shift = (0,) * n
        for c, row in zip(coeffs, d_rows):
            if c:
                shift = vec_add(shift, vec_scale(row, c, p), p)
        members = small_cached if small_cached is not None else _iter_span(small.basis, p, n)
        for s in members:
            yield vec_add(shift, s, p)


def _min_weight_difference(big: Subspace, small: Subspace) -> int | None:
    best = None
    for v in _iter_difference(big, small):
        w = weight(v)
        if best is None or w < best:
            best = w
            if best == 1:
                break
    return best


def enumerate_nested_pairs(n: int, q: int, k1: int, k2: int) -> EnumerationReport:
    """Visit every nested pair with dim C1 = k1, dim C2 = k2 exactly once and
    tally, for each nonzero error vector, how many pairs fail to detect it
    as a bit error and as a phase error."""
    field = GF(q)
    if not (n >= 1 and 0 <= k2 <= k1 <= n):
        raise ParameterRangeError(f"need 1 <= n and 0 <= k2 <= k1 <= n, got {(n, k1, k2)}")
    total_expected = gaussian_binomial(n, k1, q) * gaussian_binomial(k1, k2, q)
    if total_expected > PAIR_GUARD:
        raise EnumerationSizeError(f"{total_expected} pairs exceeds the guard of {PAIR_GUARD}")
    if q**n - 1 > ERROR_TABLE_GUARD:
        raise EnumerationSizeError(
            f"{q**n - 1} error vectors exceed the tally guard of {ERROR_TABLE_GUARD}"
        )

    full = Subspace.full(field, n)
    per_x = {e: 0 for e in full.vectors() if any(e)}
    per_z = {e: 0 for e in per_x}
    total = 0
    for c1 in iter_subspaces(field, n, k1):
        c1_dual = c1.dual()
        for coeff_space in iter_subspaces(field, k1, k2):
            rows = []
            for srow in coeff_space.basis:
                vec = (0,) * n
                for coef, brow in zip(srow, c1.basis):
                    if coef:
                        vec = vec_add(vec, vec_scale(brow, coef, q), q)
                rows.append(vec)
            c2 = Subspace.span(field, n, rows)
            total += 1
            for e in _iter_difference(c1, c2):
                per_x[e] += 1
            for e in _iter_difference(c2.dual(), c1_dual):
                per_z[e] += 1
    return EnumerationReport(
        q=q, n=n, k1=k1, k2=k2, total_pairs=total, per_error_x=per_x, per_error_z=per_z
    )


def css_distances(pair: NestedPair) -> DistancePair:
    """Asymmetric distances of the CSS pair by coset enumeration:
    dx = min weight over C1 \\ C2, dz = min weight over C2-dual \\ C1-dual."""
    q, n = pair.q, pair.n
    cost = q**pair.c1.dim + q ** (n - pair.c2.dim)
    if cost > COSET_GUARD:
        raise EnumerationSizeError(f"{cost} codewords exceeds the guard of {COSET_GUARD}")
    dx = _min_weight_difference(pair.c1, pair.c2)
    dz = _min_weight_difference(pair.c2.dual(), pair.c1.dual())
    return DistancePair(dx=dx, dz=dz)


def iter_weight_at_most(n: int, q: int, t: int) -> Iterator[Vec]:
    """Nonzero vectors of GF(q)^n with weight <= t."""
    for w in range(1, t + 1):
        for positions in combinations(range(n), w):
            for values in product(range(1, q), repeat=w):
                v = [0] * n
                for pos, val in zip(positions, values):
                    v[pos] = val
                yield tuple(v)


def stab_is_detectable(code: IsotropicCode, e: Vec) -> bool:
    """A nonzero error (ex|ez) is undetectable iff it lies in the
    symplectic dual but outside the stabilizer space itself."""
    if len(e) != 2 * code.n:
        raise InputShapeError(f"error vector must have length {2 * code.n}")
    if not any(e):
        raise DomainError("the zero vector is not an error pattern")
    return not (code.stabilizer_dual.contains(e) and not code.c.contains(e))


def stab_detects_profile(code: IsotropicCode, dx: int, dz: int) -> bool:
    """Whether the code qualifies as [[n, k, dx, dz]]: every error with bit
    weight <= dx-1 and phase weight <= dz-1 (not both parts zero) is
    detectable."""
    n, q = code.n, code.q
    for name, d in (("dx", dx), ("dz", dz)):
        if not 1 <= d <= n + 1:
            raise ParameterRangeError(f"need 1 <= {name} <= n+1, got {d}")
    patterns = (ball_sum(n, q, dx - 1) + 1) * (ball_sum(n, q, dz - 1) + 1)
    if patterns > PROFILE_GUARD:
        raise EnumerationSizeError(f"{patterns} patterns exceeds the guard of {PROFILE_GUARD}")
    zero = (0,) * n
    xs = [zero, *iter_weight_at_most(n, q, dx - 1)]
    zs = [zero, *iter_weight_at_most(n, q, dz - 1)]
    for ex in xs:
        for ez in zs:
            if ex == zero and ez == zero:
                continue
            if not stab_is_detectable(code, ex + ez):
                return False
    return True


def stab_profile_matrix(code: IsotropicCode) -> list[list[bool]]:
    """Boolean matrix M[dx-1][dz-1] = detects-profile(dx, dz) over the full
    range 1..n+1.  Computed via the dz-frontier; the profile predicate is
    monotone non-increasing in both arguments."""
    n = code.n
    dmax = n + 1
    dz_cap = dmax
    matrix = []
    for dx in range(1, dmax + 1):
        while dz_cap >= 1 and not stab_detects_profile(code, dx, dz_cap):
            dz_cap -= 1
        matrix.append([dz <= dz_cap for dz in range(1, dmax + 1)])
    return matrix


def _random_full_rank(
    rng: Random, field: GF, nrows: int, ncols: int
) -> tuple[Subspace, list[list[int]]]:
    """Row space (and raw rows) of a uniformly random full-rank nrows x ncols
    matrix; the induced distribution over nrows-dim subspaces is uniform."""
    while True:
        rows = [[rng.randrange(field.p) for _ in range(ncols)] for _ in range(nrows)]
        space = Subspace.span(field, ncols, rows)
        if space.dim == nrows:
            return space, rows
        # reject rank-deficient draws


def random_nested_pair(n: int, q: int, k1: int, k2: int, seed: int) -> NestedPair:
    """Uniform draw from the set of nested pairs with dims (k1, k2).

    C1 is the row space of a uniform full-rank k1 x n matrix; C2 is drawn
    the same way inside C1's coordinates.  Deterministic in ``seed``.
    """
    field = GF(q)
    if not (n >= 1 and 0 <= k2 <= k1 <= n):
        raise ParameterRangeError(f"need 1 <= n and 0 <= k2 <= k1 <= n, got {(n, k1, k2)}")
    rng = Random(seed)
    c1, _ = _random_full_rank(rng, field, k1, n)
    _, coeff_rows = _random_full_rank(rng, field, k2, k1)
    rows = []
    for crow in coeff_rows:
        vec = (0,) * n
        for coef, brow in zip(crow, c1.basis):
            if coef:
                vec = vec_add(vec, vec_scale(brow, coef, q), q)
        rows.append(vec)
    return NestedPair(c1=c1, c2=Subspace.span(field, n, rows))


def random_isotropic_code(n: int, q: int, k: int, seed: int) -> IsotropicCode:
    """A random [[n, k]]_q stabilizer space built by iterated extension:
    repeatedly adjoin a uniform vector from (current dual) \\ (current
    space).  Deterministic in ``seed``.

    The distribution is NOT uniform over all isotropic subspaces; only
    validity is guaranteed, so no success-rate claim is attached to it.
    """
    field = GF(q)
    if not (n >= 1 and 0 <= k <= n):
        raise ParameterRangeError(f"need 1 <= n and 0 <= k <= n, got {(n, k)}")
    rng = Random(seed)
    c = Subspace.zero(field, 2 * n)
    for _ in range(n - k):
        dual = c.symplectic_dual()
        while True:
            v = (0,) * (2 * n)
            for coef, brow in zip((rng.randrange(q) for _ in range(dual.dim)), dual.basis):
                if coef:
                    v = vec_add(v, vec_scale(brow, coef, q), q)
            if not c.contains(v):
                break
        c = Subspace.span(field, 2 * n, c.basis + (v,))
    return IsotropicCode(c=c)


@dataclass(frozen=True)
class SearchHit:
    """A verified witness: the code, its verified distances (for stabilizer
    witnesses the requested profile, verified as met), and the 1-based
    trial that produced it."""

    code: Union[NestedPair, IsotropicCode]
    distances: DistancePair
    trial_index: int


def derive_trial_seed(seed: int, trial: int) -> int:
    """Injective per-trial seed so trials are independent of schedule."""
    return seed * (1 << 64) + trial


def _evaluate_trial(
    kind: str,
    q: int,
    n: int,
    k1: int | None,
    k2: int | None,
    k: int | None,
    dx: int,
    dz: int,
    seed: int,
    trial: int,
) -> SearchHit | None:
    trial_seed = derive_trial_seed(seed, trial)
    if kind == "css":
        pair = random_nested_pair(n, q, k1, k2, trial_seed)
        dist = css_distances(pair)
        if dist.meets(dx, dz):
            return SearchHit(code=pair, distances=dist, trial_index=trial)
    else:
        code = random_isotropic_code(n, q, k, trial_seed)
        if stab_detects_profile(code, dx, dz):
            return SearchHit(code=code, distances=DistancePair(dx=dx, dz=dz), trial_index=trial)
    return None


def gv_witness_search(
    kind: str,
    *,
    q: int,
    n: int,
    dx: int,
    dz: int,
    trials: int,
    seed: int,
    k1: int | None = None,
    k2: int | None = None,
    k: int | None = None,
    workers: int = 1,
) -> SearchHit | None:
    """Randomized witness search: draw up to ``trials`` codes and return the
    first (lowest trial index) whose verified distances meet (dx, dz).

    Trial t uses the derived seed f(seed, t), so the outcome is identical
    whether trials run sequentially or on a worker pool.  For the css kind
    the sampler is uniform, so when the corresponding bound is feasible
    each trial succeeds with probability at least 1 - lhs.
    """
    if kind == "css":
        if k1 is None or k2 is None:
            raise ParameterRangeError("css search needs k1 and k2")
        CssBoundQuery(q=q, n=n, k1=k1, k2=k2, dx=dx, dz=dz)
    elif kind == "stab":
        if k is None:
            raise ParameterRangeError("stab search needs k")
        StabBoundQuery(q=q, n=n, k=k, dx=dx, dz=dz)
    else:
        raise ParameterRangeError(f"kind must be 'css' or 'stab', got {kind!r}")
    if trials < 1:
        raise ParameterRangeError(f"trials must be >= 1, got {trials}")

    if workers <= 1:
        for trial in range(1, trials + 1):
            hit = _evaluate_trial(kind, q, n, k1, k2, k, dx, dz, seed, trial)
            if hit is not None:
                return hit
        return None

    batch = 4 * workers
    with ProcessPoolExecutor(max_workers=workers) as pool:
        start = 1
        while start <= trials:
            stop = min(start + batch, trials + 1)
            futures = [
                pool.submit(_evaluate_trial, kind, q, n, k1, k2, k, dx, dz, seed, trial)
                for trial in range(start, stop)
            ]
            for fut in futures:
                hit = fut.result()
                if hit is not None:
                    return hit
            start = stop
    return None


def code_to_json_dict(code: Union[NestedPair, IsotropicCode]) -> dict:
    if isinstance(code, NestedPair):
        return {
            "type": "css",
            "q": code.q,
            "n": code.n,
            "c1": [list(row) for row in code.c1.basis],
            "c2": [list(row) for row in code.c2.basis],
        }
    return {
        "type": "stab",
        "q": code.q,
        "n": code.n,
        "generators": [list(row) for row in code.c.basis],
    }


def write_code_file(code: Union[NestedPair, IsotropicCode], path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_json_dict(code), sort_keys=True) + "\n")


def load_code_file(path: str | Path) -> Union[NestedPair, IsotropicCode]:
    """Load a code from its JSON file form; rows are canonicalized and all
    invariants (entry ranges, nesting, isotropy) re-checked."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputShapeError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or data.get("type") not in ("css", "stab"):
        raise InputShapeError('code file needs "type": "css" or "stab"')
    q, n = data.get("q"), data.get("n")
    if not isinstance(q, int) or not isinstance(n, int) or n < 1:
        raise InputShapeError('code file needs integer "q" and "n" fields')
    field = GF(q)
    if data["type"] == "css":
        if "c1" not in data or "c2" not in data:
            raise InputShapeError('css code file needs "c1" and "c2" generator lists')
        c1 = Subspace.span(field, n, data["c1"])
        c2 = Subspace.span(field, n, data["c2"])
        return NestedPair(c1=c1, c2=c2)
    if "generators" not in data:
        raise InputShapeError('stab code file needs a "generators" list')
    return IsotropicCode(c=Subspace.span(field, 2 * n, data["generators"]))
