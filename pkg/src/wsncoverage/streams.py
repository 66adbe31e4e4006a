"""Counter-based random streams keyed by (seed, stream index).

Philox is a counter-based generator: distinct keys give statistically
independent streams (numpy documents this for directly-set keys), so per-trial
substreams can be derived without any coordination and simulation results do
not depend on scheduling or worker count.
"""

import numpy as np

__all__ = ["GENERATOR_NAME", "philox_stream"]

GENERATOR_NAME = "philox4x64"

_U64 = 2**64


def philox_stream(seed: int, stream: int = 0) -> np.random.Generator:
    """Return the generator for (seed, stream); the mapping is reproducible."""
    if not 0 <= int(seed) < _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if not 0 <= int(stream) < _U64:
        raise ValueError(f"stream index must be an unsigned 64-bit integer, got {stream}")
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
