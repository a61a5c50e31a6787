"""Cross-checks of the planar pipeline against independent computations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .amoeba2d import AmoebaGraph, assemble_amoeba, maximal_pieces, tree_pieces
from .arrangement import count_complement, grid_oracle_components
from .instances import random_parameter_near_zeros
from .tropical import DiscriminantMap, eval_F_exact


@dataclass(frozen=True)
class MembershipReport:
    samples: int
    misses: tuple[tuple[Fraction, tuple[Fraction, Fraction]], ...]

    @property
    def ok(self) -> bool:
        return not self.misses


def sample_membership(
    dmap: DiscriminantMap, G: AmoebaGraph, samples: int, rng: random.Random
) -> MembershipReport:
    """Evaluate ``F`` exactly at random parameters and test each image against ``G``."""
    misses = []
    for _ in range(samples):
        lam = random_parameter_near_zeros(dmap, rng)
        img = eval_F_exact(dmap, [lam])
        if not G.contains(img):
            misses.append((lam, img))
    return MembershipReport(samples, tuple(misses))


@dataclass(frozen=True)
class OracleReport:
    exact_total: int
    grid_total: int
    tree_matches: bool
    membership: MembershipReport

    @property
    def ok(self) -> bool:
        return self.exact_total == self.grid_total and self.tree_matches and self.membership.ok

    def to_json_obj(self) -> dict:
        return {
            "exact_total": self.exact_total,
            "grid_total": self.grid_total,
            "tree_matches": self.tree_matches,
            "samples": self.membership.samples,
            "misses": [[str(l), [str(x), str(y)]] for l, (x, y) in self.membership.misses],
            "ok": self.ok,
        }


def oracle_check(
    dmap: DiscriminantMap, samples: int = 1000, seed: Optional[int] = 0
) -> OracleReport:
    G = assemble_amoeba(dmap)
    exact = count_complement(G)
    grid = grid_oracle_components(G)
    tree_ok = maximal_pieces(G) == tree_pieces(dmap)
    mem = sample_membership(dmap, G, samples, random.Random(seed))
    return OracleReport(exact.total, grid.total, tree_ok, mem)
