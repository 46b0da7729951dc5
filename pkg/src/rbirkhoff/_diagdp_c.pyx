# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled interlacing-chain kernel.

Same contract as ``_diagdp_py.grow_chain``.  Tuples are packed into a
``uint64`` in base ``hi + 1`` (position 0 least significant) and counts are
``uint64``; ``OverflowError`` is raised when either does not fit so the
caller can fall back to the pure-Python kernel.
"""
from libcpp.unordered_map cimport unordered_map
from libc.stdint cimport uint64_t
from cython.operator cimport dereference as deref, preincrement as inc

from .errors import BudgetExceeded

cdef extern from *:
    """
    #include <stdint.h>
    static inline int rb_add_overflow(uint64_t a, uint64_t b, uint64_t *out) {
        return __builtin_add_overflow(a, b, out);
    }
    """
    int rb_add_overflow(uint64_t a, uint64_t b, uint64_t *out)

ctypedef unordered_map[uint64_t, uint64_t] StateMap

cdef enum:
    MAXLEN = 64


cdef int _grow(StateMap& cur, StateMap& nxt, int L, long long S, long long hi,
               uint64_t* powers, long long max_states) except -1:
    cdef uint64_t B = <uint64_t>(hi + 1)
    cdef long long d[MAXLEN]
    cdef long long lo, up, prefix, tail_min, tail_max, a, b, f
    cdef uint64_t key, base, newkey, c, acc
    cdef int j, p
    cdef unordered_map[uint64_t, uint64_t].iterator it
    cdef StateMap.iterator found

    # pad with a leading zero: shift every digit up one position
    nxt.clear()
    it = cur.begin()
    while it != cur.end():
        nxt[deref(it).first * B] = deref(it).second
        inc(it)
    cur.swap(nxt)

    for j in range(1, L + 2):
        nxt.clear()
        nxt.reserve(cur.size() * 2)
        it = cur.begin()
        while it != cur.end():
            key = deref(it).first
            c = deref(it).second
            inc(it)
            for p in range(L + 1):
                d[p] = <long long>((key // powers[p]) % B)
            lo = d[j - 1]
            prefix = 0
            for p in range(j - 1):
                prefix += d[p]
            tail_min = 0
            for p in range(j, L + 1):
                tail_min += d[p]
            if j <= L:
                up = d[j]
                tail_max = tail_min - d[j] + hi
            else:
                up = hi
                tail_max = 0
            a = S - prefix - tail_max
            if a < lo:
                a = lo
            b = S - prefix - tail_min
            if b > up:
                b = up
            if a > b:
                continue
            base = key - (<uint64_t>d[j - 1]) * powers[j - 1]
            for f in range(a, b + 1):
                newkey = base + (<uint64_t>f) * powers[j - 1]
                found = nxt.find(newkey)
                if found == nxt.end():
                    nxt[newkey] = c
                else:
                    if rb_add_overflow(deref(found).second, c, &acc):
                        raise OverflowError("chain count exceeds 64 bits")
                    deref(found).second = acc
        if max_states >= 0 and <long long>nxt.size() > max_states:
            raise BudgetExceeded(f"diagonal DP exceeded {max_states} states")
        cur.swap(nxt)
    return 0


def grow_chain(sums, long long hi, max_states=None):
    cdef int n = len(sums)
    cdef uint64_t powers[MAXLEN + 1]
    cdef StateMap cur, nxt
    cdef int L, p
    cdef long long cap = -1 if max_states is None else max_states
    cdef uint64_t key
    cdef StateMap.iterator it
    if hi < 0:
        return {}
    if n + 1 > MAXLEN:
        raise OverflowError("chain too long for the compiled kernel")
    # base**n must fit comfortably in 64 bits
    if int(hi + 1) ** n >= 2 ** 63:
        raise OverflowError("state encoding exceeds 64 bits")
    powers[0] = 1
    for p in range(1, n + 1):
        powers[p] = powers[p - 1] * <uint64_t>(hi + 1)
    cur[0] = 1
    for L in range(n):
        _grow(cur, nxt, L, <long long>sums[L], hi, powers, cap)
        if cur.size() == 0:
            return {}
    out = {}
    it = cur.begin()
    while it != cur.end():
        key = deref(it).first
        digits = []
        for p in range(n):
            digits.append(int((key // powers[p]) % <uint64_t>(hi + 1)))
        out[tuple(digits)] = int(deref(it).second)
        inc(it)
    return out
