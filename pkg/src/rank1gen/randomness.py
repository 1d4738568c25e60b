"""Seedable random streams with explicit substream derivation.

The base generator is xoshiro256++ (256-bit state, period 2^256 - 1),
seeded through a splitmix64 chain so any 64-bit seed, including 0,
expands to a full-entropy state. Logical purposes (event budget vs
endpoint picks) get fixed substream identifiers derived from the owning
seed, so adding a diagnostic draw never perturbs a generated graph.

A stream is single-owner: share nothing across threads; derive children
instead. spawn() hands out child streams by counter, and
reserve_children() exposes the same counter arithmetic to batch kernels
so aggregated runs reproduce the exact per-run graphs.
"""

from __future__ import annotations

import math
import secrets

from ._backend import get_impl
from .errors import DomainError

# Fixed substream identifiers. Renumbering any of these changes every
# generated graph, which breaks the reproducibility contract.
STREAM_BUDGET = 0
STREAM_ENDPOINT = 1
STREAM_PAIRS = 2
STREAM_SKIP = 3
STREAM_WEIGHTS = 4

# Salt constants mirror the backend kernels; read them from whichever
# backend is active so a mismatch cannot go unnoticed.
SPAWN_SALT = get_impl().SPAWN_SALT
SUBSTREAM_SALT = get_impl().SUBSTREAM_SALT

_U64_MASK = (1 << 64) - 1
# Poisson means at or above 2^62 would overflow the integer result path.
_POISSON_MEAN_CAP = float(1 << 62)


def resolve_seed(seed: int | None) -> int:
    """Return seed as u64, drawing from OS entropy when absent."""
    if seed is None:
        return secrets.randbits(64)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise DomainError("seed must be an integer")
    if not 0 <= seed <= _U64_MASK:
        raise DomainError("seed must fit in an unsigned 64-bit integer")
    return seed


class RandomStream:
    """One reproducible stream plus its substream/spawn bookkeeping."""

    __slots__ = ("seed", "_impl", "_state", "_spawn_count")

    def __init__(self, seed: int | None = None, backend: str | None = None):
        self.seed = resolve_seed(seed)
        self._impl = get_impl(backend) if backend is not None else get_impl()
        self._state = self._impl.Stream(self.seed)
        self._spawn_count = 0

    def uniform_real(self) -> float:
        """53-bit uniform in [0, 1)."""
        return self._state.uniform()

    def uniform_index(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection; no modulo bias."""
        if n < 1:
            raise DomainError("uniform_index needs n >= 1")
        if n > _U64_MASK:
            raise DomainError("uniform_index range exceeds 64 bits")
        return self._state.index(n)

    def poisson(self, mean: float) -> int:
        """Exact Poisson variate for any finite nonnegative mean."""
        mean = float(mean)
        if not math.isfinite(mean) or mean < 0.0:
            raise DomainError("poisson mean must be finite and nonnegative")
        if mean >= _POISSON_MEAN_CAP:
            raise DomainError("poisson mean too large for the integer result")
        return self._state.poisson(mean)

    def next_u64(self) -> int:
        return self._state.next_u64()

    def substream(self, stream_id: int) -> "RandomStream":
        """Independent stream for a fixed logical purpose of this seed."""
        child = RandomStream.__new__(RandomStream)
        child.seed = self._impl.derive_seed(self.seed, SUBSTREAM_SALT, stream_id)
        child._impl = self._impl
        child._state = self._impl.Stream(child.seed)
        child._spawn_count = 0
        return child

    def spawn_seed(self) -> int:
        """Seed of the next sequential child; advances the counter."""
        s = self._impl.derive_seed(self.seed, SPAWN_SALT, self._spawn_count)
        self._spawn_count += 1
        return s

    def spawn(self) -> "RandomStream":
        """Next sequential child stream."""
        child = RandomStream.__new__(RandomStream)
        child.seed = self.spawn_seed()
        child._impl = self._impl
        child._state = self._impl.Stream(child.seed)
        child._spawn_count = 0
        return child

    def reserve_children(self, count: int) -> tuple[int, int]:
        """Claim child indices for a batch kernel.

        Returns (seed, first_child_index); the kernel derives child r as
        the (first_child_index + r)-th sequential spawn, so a batch of
        count runs is bit-identical to count spawn() calls.
        """
        if count < 0:
            raise DomainError("cannot reserve a negative child count")
        start = self._spawn_count
        self._spawn_count += count
        return self.seed, start

def uniform_real(rng: RandomStream) -> float:
    return rng.uniform_real()


def uniform_index(rng: RandomStream, n: int) -> int:
    return rng.uniform_index(n)


def poisson(rng: RandomStream, mean: float) -> int:
    return rng.poisson(mean)
