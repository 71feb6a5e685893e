"""The published two-chain pattern table: 131 links mapped onto 13 links.

The table is transcribed as data; :func:`check_example1` verifies totality,
image bounds, and the seven segment cardinalities.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

N_FINE = 131
N_COARSE = 13

# (first, last, target): phi maps V_first..V_last to U_target
SEGMENTS: Tuple[Tuple[int, int, int], ...] = (
    (1, 32, 13),
    (33, 33, 12),
    (34, 34, 11),
    (35, 35, 10),
    (36, 36, 5),
    (37, 37, 6),
    (38, 82, 7),
    (83, 83, 8),
    (84, 97, 9),
    (98, 98, 6),
    (99, 99, 5),
    (100, 100, 4),
    (101, 101, 3),
    (102, 102, 2),
    (103, 131, 1),
)


def example1_table() -> Dict[int, int]:
    """phi_1 as a dict: fine link index -> coarse link index."""
    table = {}
    for first, last, target in SEGMENTS:
        for i in range(first, last + 1):
            table[i] = target
    return table


def check_example1() -> dict:
    """Structural report on the table; raises nothing, reports everything."""
    table = example1_table()
    domain_ok = sorted(table) == list(range(1, N_FINE + 1))
    image = sorted(set(table.values()))
    image_ok = all(1 <= u <= N_COARSE for u in image)
    cardinalities = [last - first + 1 for first, last, _ in SEGMENTS]
    # the seven blocks of the published list: runs of equal targets
    blocks: List[int] = []
    prev_target = None
    for first, last, target in SEGMENTS:
        size = last - first + 1
        if blocks and _same_block(prev_target, target):
            blocks[-1] += size
        else:
            blocks.append(size)
        prev_target = target
    usage = {u: 0 for u in range(1, N_COARSE + 1)}
    for u in table.values():
        usage[u] += 1
    return {
        "total": domain_ok,
        "domain_size": len(table),
        "image_within_bounds": image_ok,
        "image": image,
        "unused_targets": [u for u in range(1, N_COARSE + 1) if usage[u] == 0],
        "usage": usage,
        "block_sizes": blocks,
        "block_sum": sum(blocks),
        "pass": domain_ok and image_ok and sum(blocks) == N_FINE
        and blocks == [32, 5, 45, 1, 14, 5, 29],
    }


def _same_block(prev, cur) -> bool:
    # the published list groups the singleton runs 33-37 and 98-102 together
    return prev is not None and prev != cur and _is_singleton_run(prev) and _is_singleton_run(cur)


def _is_singleton_run(target: int) -> bool:
    return any(first == last and t == target for first, last, t in SEGMENTS)
