"""Deterministic random streams for the simulation engine.

All randomness flows through counter-addressed Philox (4x64) substreams so
that a draw is a pure function of ``(seed, stream, slot)`` and the position
within the stream. Adding pools or rules to a program never perturbs the
draws of existing streams, which keeps paired-seed experiments comparable
and makes replay across processes and platforms exact.

Addressing scheme (a cross-version compatibility contract; changing it is
a breaking change and invalidates the frozen vectors in the test suite):

- key      = ``[seed, 0x9E3779B97F4A7C15]``
- counter  = ``[0, 0, stream, slot]``
- initial age draws for pool ``i``:        stream ``i``,            slot ``0``
- rule ``r`` draws during month ``m``:     stream ``1 + r``,        slot ``m + 1``
- reproduction draws for pool ``i``,
  month ``m``:                             stream ``100000 + i``,   slot ``m + 1``

Slot 0 is reserved for world initialization, so month-step streams start at
slot 1. Stream ids below 100000 are reserved for rules; a program with that
many rules is rejected long before it reaches the engine.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Weyl constant (2^64 / golden ratio), a conventional key-spreading value.
KEY_SALT = 0x9E3779B97F4A7C15

STREAM_REPRODUCTION_BASE = 100_000


def substream(seed: int, stream: int, slot: int) -> np.random.Generator:
    """Generator positioned at the start of one addressed substream.

    Callers draw from the returned generator in a fixed documented order;
    two calls with equal arguments yield identical sequences.
    """
    if stream < 0 or slot < 0:
        raise ValueError("stream and slot must be non-negative")
    bit_gen = np.random.Philox(
        key=np.array([seed & _MASK64, KEY_SALT], dtype=np.uint64),
        counter=np.array([0, 0, stream & _MASK64, slot & _MASK64], dtype=np.uint64),
    )
    return np.random.Generator(bit_gen)


def init_age_stream(seed: int, pool_index: int) -> np.random.Generator:
    return substream(seed, pool_index, 0)


def rule_stream(seed: int, rule_index: int, month: int) -> np.random.Generator:
    return substream(seed, 1 + rule_index, month + 1)


def reproduction_stream(seed: int, pool_index: int, month: int) -> np.random.Generator:
    return substream(seed, STREAM_REPRODUCTION_BASE + pool_index, month + 1)
