"""
Seed derivation for reproducible, order-independent experiments.

Child seeds are drawn from numpy's SeedSequence with the master seed as
entropy and the stage path (iteration, fold, replica, ...) as spawn key, so
a child seed depends only on (master, path) and never on scheduling order.
"""

from typing import Tuple

import numpy as np


def derive_seed(master: int, *path: int) -> int:
    """
    Derive a 32-bit child seed from a master seed and an index path.

    Examples:
        derive_seed(1, 3)      # seed for iteration 3
        derive_seed(1, 3, 7)   # seed for fold 7 of iteration 3
    """
    key: Tuple[int, ...] = tuple(int(p) for p in path)
    sequence = np.random.SeedSequence(entropy=int(master), spawn_key=key)
    return int(sequence.generate_state(1, dtype=np.uint32)[0])

