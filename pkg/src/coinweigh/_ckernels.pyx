# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the decision-tree solver.  Interface mirrors ``_pykernels``."""

from libc.stdint cimport uint64_t, uint32_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    LIGHTER = 0
    BALANCED = 1
    HEAVIER = 2
    UNDETERMINED = 3


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


def outcome_codes(const unsigned char[::1] classes, int n, int c,
                  const unsigned char[::1] coeffs, int num_weighings):
    cdef Py_ssize_t size = classes.shape[0] // n if n else 0
    cdef bytearray out = bytearray(num_weighings * size)
    cdef unsigned char[::1] view = out
    cdef int d[64]
    cdef int w, a, i, j, s
    cdef bint pos, neg
    cdef unsigned char code, marker
    if c > 64:
        raise ValueError("at most 64 classes")
    with nogil:
        for w in range(num_weighings):
            for a in range(size):
                for j in range(c):
                    d[j] = 0
                for i in range(n):
                    marker = coeffs[w * n + i]
                    if marker == 1:
                        d[classes[a * n + i]] += 1
                    elif marker == 2:
                        d[classes[a * n + i]] -= 1
                s = 0
                pos = False
                neg = False
                for j in range(c - 1, -1, -1):
                    s += d[j]
                    if s > 0:
                        pos = True
                    elif s < 0:
                        neg = True
                if pos and neg:
                    code = UNDETERMINED
                elif pos:
                    code = HEAVIER
                elif neg:
                    code = LIGHTER
                else:
                    code = BALANCED
                view[w * size + a] = code
    return bytes(out)


cdef class _Words:
    cdef uint64_t* buf
    cdef Py_ssize_t nwords

    def __cinit__(self, Py_ssize_t nwords):
        self.nwords = nwords
        self.buf = <uint64_t*> calloc(max(nwords, 1), sizeof(uint64_t))
        if self.buf == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.buf)

    cdef void load(self, object state):
        cdef bytes raw = (<object> state).to_bytes(self.nwords * 8, "little")
        memcpy(self.buf, <char*> raw, self.nwords * 8)


cdef class MaskTable:
    cdef uint64_t* masks
    cdef readonly int num_weighings
    cdef readonly Py_ssize_t size
    cdef Py_ssize_t nwords
    cdef _Words scratch
    cdef dict _cache

    def __cinit__(self, const unsigned char[::1] codes, int num_weighings, Py_ssize_t size):
        cdef Py_ssize_t w, a, word
        cdef unsigned char code
        self.num_weighings = num_weighings
        self.size = size
        self.nwords = (size + 63) // 64
        self.masks = <uint64_t*> calloc(max(num_weighings * 4 * self.nwords, 1), sizeof(uint64_t))
        if self.masks == NULL:
            raise MemoryError()
        for w in range(num_weighings):
            for a in range(size):
                code = codes[w * size + a]
                word = (w * 4 + code) * self.nwords + a // 64
                self.masks[word] |= (<uint64_t> 1) << (a % 64)
        self.scratch = _Words(self.nwords)
        self._cache = {}

    def __dealloc__(self):
        free(self.masks)

    def mask(self, int w, int code):
        cdef Py_ssize_t key = w * 4 + code
        cdef char* start
        hit = self._cache.get(key)
        if hit is None:
            start = <char*> (self.masks + key * self.nwords)
            raw = start[: self.nwords * 8]
            hit = int.from_bytes(raw, "little")
            self._cache[key] = hit
        return hit

    def split_sizes(self, state):
        cdef Py_ssize_t w, code, j, base
        cdef int total
        cdef uint64_t* st = self.scratch.buf
        self.scratch.load(state)
        out = [0] * (self.num_weighings * 4)
        cdef int* tmp = <int*> malloc(self.num_weighings * 4 * sizeof(int))
        if tmp == NULL:
            raise MemoryError()
        with nogil:
            for w in range(self.num_weighings):
                for code in range(4):
                    base = (w * 4 + code) * self.nwords
                    total = 0
                    for j in range(self.nwords):
                        total += popcount64(st[j] & self.masks[base + j])
                    tmp[w * 4 + code] = total
        for j in range(self.num_weighings * 4):
            out[j] = tmp[j]
        free(tmp)
        return out


cdef class AnswerTable:
    cdef uint32_t* answers
    cdef uint32_t* stamp
    cdef uint32_t epoch
    cdef readonly int num_answers
    cdef Py_ssize_t size
    cdef Py_ssize_t nwords
    cdef _Words scratch

    def __cinit__(self, answers, int num_answers):
        cdef Py_ssize_t i
        self.size = len(answers)
        self.num_answers = num_answers
        self.nwords = (self.size + 63) // 64
        self.answers = <uint32_t*> malloc(max(self.size, 1) * sizeof(uint32_t))
        self.stamp = <uint32_t*> calloc(max(num_answers, 1), sizeof(uint32_t))
        if self.answers == NULL or self.stamp == NULL:
            raise MemoryError()
        for i in range(self.size):
            self.answers[i] = answers[i]
        self.epoch = 0
        self.scratch = _Words(self.nwords)

    def __dealloc__(self):
        free(self.answers)
        free(self.stamp)

    def count(self, state):
        cdef Py_ssize_t j
        cdef uint64_t word
        cdef int bit, distinct = 0
        cdef uint32_t ans
        self.scratch.load(state)
        self.epoch += 1
        if self.epoch == 0:
            memset(self.stamp, 0, self.num_answers * sizeof(uint32_t))
            self.epoch = 1
        with nogil:
            for j in range(self.nwords):
                word = self.scratch.buf[j]
                while word:
                    bit = __builtin_ctzll(word)
                    word &= word - 1
                    ans = self.answers[j * 64 + bit]
                    if self.stamp[ans] != self.epoch:
                        self.stamp[ans] = self.epoch
                        distinct += 1
        return distinct

    def first(self, state):
        low = state & -state
        return self.answers[low.bit_length() - 1]
