"""Pure-Python interlacing-chain kernel (reference and fallback)."""
from __future__ import annotations

from .errors import BudgetExceeded


def _grow(states: dict, L: int, S: int, hi: int, max_states) -> dict:
    # Pad with e_0 = 0, then replace e_{j-1} by f_j one position at a time.
    cur = {(0,) + s: c for s, c in states.items()}
    for j in range(1, L + 2):
        nxt: dict = {}
        get = nxt.get
        for s, c in cur.items():
            lo = s[j - 1]
            up = s[j] if j <= L else hi
            prefix = sum(s[: j - 1])
            tail_min = sum(s[j:])
            tail_max = tail_min - s[j] + hi if j <= L else 0
            a = max(lo, S - prefix - tail_max)
            b = min(up, S - prefix - tail_min)
            head, rest = s[: j - 1], s[j:]
            for f in range(a, b + 1):
                key = head + (f,) + rest
                nxt[key] = get(key, 0) + c
        if max_states is not None and len(nxt) > max_states:
            raise BudgetExceeded(f"diagonal DP exceeded {max_states} states")
        cur = nxt
    return cur


def grow_chain(sums, hi: int, max_states: int | None = None) -> dict[tuple[int, ...], int]:
    """Count chains of interlacing tuples.

    Layer ``a`` (``a = 1 .. len(sums)``) is a weakly increasing tuple of
    length ``a`` with entries in ``[0, hi]`` summing to ``sums[a-1]``;
    consecutive layers ``e`` (length L) and ``f`` (length L+1) satisfy
    ``f_1 <= e_1 <= f_2 <= ... <= e_L <= f_{L+1}``.  Returns the number of
    chains ending in each final-layer tuple.
    """
    states: dict = {(): 1}
    for L, S in enumerate(sums):
        states = _grow(states, L, int(S), int(hi), max_states)
        if not states:
            break
    return states
