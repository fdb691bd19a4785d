"""Counter-based random streams keyed by ``(seed, *stream_keys)``.

Every replication in a Monte-Carlo study asks for its own stream, so the
numbers it sees depend only on the master seed and its indices, never on
how many replications ran before it or on which worker ran it.
"""

import numpy as np


def stream(seed, *keys):
    """Return an independent Philox generator for ``(seed, *keys)``.

    Parameters
    ----------
    seed : int
        Master seed, a non-negative integer.
    *keys : int
        Stream indices (replication number, grid position, ...).

    Returns
    -------
    numpy.random.Generator
    """
    if seed < 0 or any(k < 0 for k in keys):
        raise ValueError("seed and stream keys must be non-negative")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))
