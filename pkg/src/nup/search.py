"""Stochastic search for non-unique product sets: random restarts + annealing.

The candidate universe is every distinct element reachable by a generator
word of bounded length, enumerated once per run.  A state is a fixed-size
subset of the universe; its score is the number of uniquely represented
elements of its square, so score 0 means a non-unique product set.  Moves
replace one element (swap-one) or multiply one element by a random generator
(mutate-one); with the symmetric flag the state stays closed under inversion
and moves act on inverse-closed pairs.  Acceptance follows simulated
annealing with geometric cooling.  Runs are deterministic functions of the
seed; restarts draw their seeds from the master seed by a fixed splitting
rule and ties go to the lowest restart index.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .families import build_base_set
from .sets import GroupSet, make_set, unique_products
from .words import GroupParams, NormalForm, generator, identity

_NEIGHBORHOODS = ("swap-one", "mutate-one")
_INITS = ("random", "base")


@dataclass(frozen=True)
class SearchConfig:
    k: int
    size: int
    word_length_cap: int = 5
    symmetric: bool = False
    seed: int = 0
    budget: int = 2000
    restarts: int = 1
    temp0: float = 2.0
    cooling: float = 0.995
    neighborhood: str = "swap-one"
    init: str = "random"

    def __post_init__(self):
        GroupParams(self.k)
        if self.size < 2:
            raise ValueError("set size must be >= 2")
        if self.budget < 1:
            raise ValueError("iteration budget must be >= 1")
        if self.word_length_cap < 1:
            raise ValueError("word length cap must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.neighborhood not in _NEIGHBORHOODS:
            raise ValueError(f"neighborhood must be one of {_NEIGHBORHOODS}")
        if self.init not in _INITS:
            raise ValueError(f"init must be one of {_INITS}")
        if not (0.0 < self.cooling <= 1.0) or self.temp0 <= 0:
            raise ValueError("need 0 < cooling <= 1 and temp0 > 0")


@dataclass
class SearchResult:
    best: GroupSet
    score: int
    iterations: int
    seed: int
    restart_scores: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "score": self.score,
            "iterations": self.iterations,
            "seed": self.seed,
            "size": len(self.best),
            "restart_scores": self.restart_scores,
            "elements": [str(w) for w in self.best],
        }


def candidate_universe(params: GroupParams, length_cap: int) -> list[NormalForm]:
    """Distinct normal forms of all generator words of length <= length_cap,
    in canonical order."""
    atoms = [generator(params, "a", 1), generator(params, "a", -1), generator(params, "b", 1), generator(params, "b", -1)]
    inverse_of = {0: 1, 1: 0, 2: 3, 3: 2}
    seen = {identity(params)}
    frontier = [(identity(params), -1)]
    for _ in range(length_cap):
        nxt = []
        for w, last in frontier:
            for ai, atom in enumerate(atoms):
                if last >= 0 and ai == inverse_of[last]:
                    continue  # freely reduced words only
                w2 = w * atom
                nxt.append((w2, ai))
                seen.add(w2)
        frontier = nxt
    return sorted(seen, key=lambda w: w.sort_key())


def score(S: GroupSet) -> int:
    """Number of uniquely represented elements of S*S; 0 means success."""
    if len(S) == 0:
        raise ValueError("empty set")
    return len(unique_products(S, S))


def _restart_seed(master: int, r: int) -> int:
    # fixed splitting rule: one step of a 64-bit LCG per restart index
    return (master * 6364136223846793005 + 1442695040888963407 * (r + 1)) % (1 << 64)


class _State:
    """Fixed-size subset of the universe as a sorted tuple of indices."""

    def __init__(self, universe, inv_index, params, symmetric):
        self.universe = universe
        self.inv_index = inv_index  # universe index -> index of the inverse
        self.params = params
        self.symmetric = symmetric

    def as_set(self, idxs) -> GroupSet:
        return make_set(self.params, [self.universe[i] for i in idxs])

    def score(self, idxs) -> int:
        return score(self.as_set(idxs))

    def random_state(self, rng, size) -> tuple:
        chosen: set[int] = set()
        n = len(self.universe)
        if not self.symmetric:
            while len(chosen) < size:
                chosen.add(rng.randrange(n))
            return tuple(sorted(chosen))
        if size % 2 == 1:
            # only the identity is self-inverse, so odd symmetric sets pin it
            chosen.add(self._identity_index())
        while len(chosen) < size:
            i = rng.randrange(n)
            j = self.inv_index[i]
            if i == j or i in chosen:
                continue
            chosen.add(i)
            chosen.add(j)
        return tuple(sorted(chosen))

    def _identity_index(self) -> int:
        for i, w in enumerate(self.universe):
            if w.is_identity():
                return i
        raise RuntimeError("identity missing from universe")

    def neighbor(self, rng, idxs, kind, atoms, uindex) -> Optional[tuple]:
        current = set(idxs)
        if kind == "mutate-one":
            for _ in range(8):
                pos = rng.randrange(len(idxs))
                i = idxs[pos]
                w2 = self.universe[i] * atoms[rng.randrange(len(atoms))]
                i2 = uindex.get(w2)
                if i2 is None or i2 in current:
                    continue
                out = self._replace(idxs, i, i2)
                if out is not None:
                    return out
            kind = "swap-one"  # fall back when mutation keeps colliding
        for _ in range(64):
            pos = rng.randrange(len(idxs))
            i = idxs[pos]
            i2 = rng.randrange(len(self.universe))
            if i2 in current:
                continue
            out = self._replace(idxs, i, i2)
            if out is not None:
                return out
        return None

    def _replace(self, idxs, old, new) -> Optional[tuple]:
        current = set(idxs)
        if not self.symmetric:
            current.discard(old)
            current.add(new)
            return tuple(sorted(current))
        old_inv = self.inv_index[old]
        new_inv = self.inv_index[new]
        if old == old_inv:
            return None  # pinned identity in odd-size symmetric sets
        if new == new_inv or new_inv in current:
            return None
        current.discard(old)
        current.discard(old_inv)
        current.add(new)
        current.add(new_inv)
        if len(current) != len(idxs):
            return None
        return tuple(sorted(current))


def run_search(config: SearchConfig) -> SearchResult:
    params = GroupParams(config.k)
    universe = candidate_universe(params, config.word_length_cap)
    uindex = {w: i for i, w in enumerate(universe)}
    inv_index = [uindex[w.inverse()] for w in universe]
    atoms = [generator(params, g, s) for g in ("a", "b") for s in (1, -1)]
    state = _State(universe, inv_index, params, config.symmetric)

    if len(universe) < config.size:
        raise ValueError(f"universe of {len(universe)} words cannot fill a set of size {config.size}")

    init_idxs = None
    if config.init == "base":
        T = build_base_set(config.k)
        if len(T) != config.size:
            raise ValueError(f"built initial set has size {len(T)}, configured size is {config.size}")
        missing = [w for w in T if w not in uindex]
        if missing:
            raise ValueError("initial set lies outside the word-length-capped universe; raise the cap")
        init_idxs = tuple(sorted(uindex[w] for w in T))

    per_restart = max(1, config.budget // config.restarts)
    best_overall = None  # (score, restart, iterations, idxs)
    restart_scores = []
    total_iters = 0
    for r in range(config.restarts):
        rng = random.Random(_restart_seed(config.seed, r))
        idxs = init_idxs if init_idxs is not None else state.random_state(rng, config.size)
        cur_score = state.score(idxs)
        best_score, best_idxs, best_at = cur_score, idxs, 0
        temp = config.temp0
        it = 0
        while it < per_restart and best_score > 0:
            it += 1
            proposal = state.neighbor(rng, idxs, config.neighborhood, atoms, uindex)
            if proposal is not None:
                new_score = state.score(proposal)
                delta = new_score - cur_score
                if delta <= 0 or rng.random() < math.exp(-delta / max(temp, 1e-9)):
                    idxs, cur_score = proposal, new_score
                    if cur_score < best_score:
                        best_score, best_idxs, best_at = cur_score, idxs, it
            temp *= config.cooling
        total_iters += it
        restart_scores.append(best_score)
        key = (best_score, r)
        if best_overall is None or key < (best_overall[0], best_overall[1]):
            best_overall = (best_score, r, best_at, best_idxs)
    best_set = state.as_set(best_overall[3])
    final_score = score(best_set)  # recomputed exactly on the final answer
    if final_score != best_overall[0]:
        raise AssertionError("recomputed score disagrees with search bookkeeping")
    return SearchResult(
        best=best_set,
        score=final_score,
        iterations=total_iters,
        seed=config.seed,
        restart_scores=restart_scores,
    )
