# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure search kernels.

Same contract as ``_pykernels``: plain strings in, strings out.  The
sequences are re-encoded once into byte buffers, and a pending shift
comparison is packed into one integer (offset shifted left, kind in the
low bits) so the deep search loops avoid the object heap.
"""

from cpython.bytes cimport PyBytes_GET_SIZE

from math import lcm

DEF KIND_D = 0
DEF KIND_A = 1
DEF KIND_B = 2


cdef class _Seq:
    cdef bytes pre
    cdef bytes per
    cdef Py_ssize_t npre, nper
    cdef const unsigned char* pre_p
    cdef const unsigned char* per_p

    def __cinit__(self, str pre, str per):
        self.pre = pre.encode("ascii")
        self.per = per.encode("ascii")
        self.npre = PyBytes_GET_SIZE(self.pre)
        self.nper = PyBytes_GET_SIZE(self.per)
        self.pre_p = self.pre
        self.per_p = self.per

    cdef inline int letter(self, Py_ssize_t i) nogil:
        if i < self.npre:
            return self.pre_p[i]
        return self.per_p[(i - self.npre) % self.nper]


cdef str _prefix_str(_Seq s, Py_ssize_t n):
    cdef Py_ssize_t i
    out = bytearray(n)
    for i in range(n):
        out[i] = s.letter(i)
    return out.decode("ascii")


def seq_letter(pre: str, per: str, i: int) -> str:
    cdef _Seq s = _Seq(pre, per)
    return chr(s.letter(i))


def seq_prefix(pre: str, per: str, n: int) -> str:
    return _prefix_str(_Seq(pre, per), n)


cdef int _periodization_vs(bytes word, _Seq s) except? -9:
    cdef Py_ssize_t n = PyBytes_GET_SIZE(word)
    cdef Py_ssize_t h = s.npre + lcm(n, s.nper)
    cdef const unsigned char* w = word
    cdef Py_ssize_t i
    cdef int cw, cs
    for i in range(h):
        cw = w[i % n]
        cs = s.letter(i)
        if cw < cs:
            return -1
        if cw > cs:
            return 1
    return 0


def periodization_vs(word: str, pre: str, per: str) -> int:
    """Compare (word)^inf with the sequence (pre, per); returns -1, 0 or 1."""
    return _periodization_vs(word.encode("ascii"), _Seq(pre, per))


cdef inline int _cmp_bump(_Seq x, Py_ssize_t off, int c, _Seq y) nogil:
    # compare prefix(x, off) + c against prefix(y, off + 1)
    cdef Py_ssize_t j
    cdef int cx, cy
    for j in range(off):
        cx = x.letter(j)
        cy = y.letter(j)
        if cx < cy:
            return -1
        if cx > cy:
            return 1
    cy = y.letter(off)
    if c < cy:
        return -1
    return 0 if c == cy else 1


cdef tuple _step_pending(tuple threads, int c, _Seq d, _Seq a, _Seq b):
    """Advance pending shift comparisons by the letter c; None kills."""
    cdef set out = set()
    cdef long packed, off
    cdef int kind, cur, side
    for packed in threads:
        kind = packed & 3
        off = packed >> 2
        if kind == KIND_D:
            cur = d.letter(off)
            if c > cur:
                return None
            if c == cur:
                out.add(((off + 1) << 2) | KIND_D)
        elif kind == KIND_A:
            cur = a.letter(off)
            if c == cur:
                out.add(((off + 1) << 2) | KIND_A)
            elif c > cur:
                side = _cmp_bump(a, off, c, b)
                if side < 0:
                    return None
                if side == 0:
                    out.add(((off + 1) << 2) | KIND_B)
        else:
            cur = b.letter(off)
            if c == cur:
                out.add(((off + 1) << 2) | KIND_B)
            elif c < cur:
                side = _cmp_bump(b, off, c, a)
                if side > 0:
                    return None
                if side == 0:
                    out.add(((off + 1) << 2) | KIND_A)
    return tuple(sorted(out))


def survivor_count(d_pre, d_per, a_pre, a_per, b_pre, b_per, depth, cap=0,
                   require_one=False):
    """Number of admissible length-depth words avoiding the open hole."""
    cdef _Seq d = _Seq(d_pre, d_per)
    cdef _Seq a = _Seq(a_pre, a_per)
    cdef _Seq b = _Seq(b_pre, b_per)
    cdef long count = 0
    cdef long want = cap
    cdef bint need_one = require_one
    cdef Py_ssize_t goal = depth
    cdef list stack = [(0, False, ())]
    cdef Py_ssize_t length
    cdef bint has_one
    cdef tuple threads, opened, nxt
    cdef int c
    while stack:
        length, has_one, threads = <tuple>stack.pop()
        if length == goal:
            if has_one or not need_one:
                count += 1
                if want and count >= want:
                    return count
            continue
        opened = threads + (KIND_D, KIND_A)
        for c in (48, 49):
            nxt = _step_pending(opened, c, d, a, b)
            if nxt is not None:
                stack.append((length + 1, has_one or c == 49, nxt))
    return count


def survivor_example(d_pre, d_per, a_pre, a_per, b_pre, b_per, depth,
                     require_one=False, leading_one=False):
    """One admissible avoiding word of the requested length, or None."""
    cdef _Seq d = _Seq(d_pre, d_per)
    cdef _Seq a = _Seq(a_pre, a_per)
    cdef _Seq b = _Seq(b_pre, b_per)
    cdef Py_ssize_t goal = depth
    cdef list stack
    cdef tuple threads, opened, nxt
    cdef str word
    cdef int c
    if leading_one:
        seed = _step_pending((KIND_D, KIND_A), 49, d, a, b)
        stack = [] if seed is None else [("1", seed)]
    else:
        stack = [("", ())]
    while stack:
        word, threads = <tuple>stack.pop()
        if len(word) == goal:
            if require_one and "1" not in word:
                continue
            return word
        opened = threads + (KIND_D, KIND_A)
        for c in (48, 49):
            nxt = _step_pending(opened, c, d, a, b)
            if nxt is not None:
                stack.append((word + chr(c), nxt))
    return None


cdef bytes _max_rotation(bytes w):
    cdef Py_ssize_t n = PyBytes_GET_SIZE(w)
    cdef bytes dbl = w + w
    cdef bytes best = w
    cdef Py_ssize_t i
    for i in range(1, n):
        if dbl[i:i + n] > best:
            best = dbl[i:i + n]
    return best


cdef bint _is_primitive(bytes w):
    return (w + w).find(w, 1) == PyBytes_GET_SIZE(w)


def admissible_necklaces(d_pre, d_per, n, cap=0):
    """Primitive admissible cyclic words of length n, one per orbit."""
    return _dfs_necklaces(d_pre, d_per, n, None, None, cap)


def avoiding_necklace(d_pre, d_per, a_pre, a_per, b_pre, b_per, n):
    """First admissible orbit of least period n with no point inside."""
    res = _dfs_necklaces(d_pre, d_per, n, (a_pre, a_per), (b_pre, b_per), 1)
    return res[0] if res else None


def avoiding_necklaces(d_pre, d_per, a_pre, a_per, b_pre, b_per, n, cap=0):
    """All admissible orbits of least period n avoiding the open hole."""
    return _dfs_necklaces(d_pre, d_per, n, (a_pre, a_per), (b_pre, b_per), cap)


cdef list _dfs_necklaces(str d_pre, str d_per, Py_ssize_t n, app, bpp,
                         long cap):
    cdef _Seq d = _Seq(d_pre, d_per)
    cdef bint hole = app is not None
    cdef _Seq a = _Seq(*app) if hole else _Seq("", "0")
    cdef _Seq b = _Seq(*bpp) if hole else _Seq("", "1")
    cdef list out = []
    if n <= 0:
        return out
    cdef tuple seed
    cdef tuple fresh
    if hole:
        fresh = (KIND_D, KIND_A)
        seed = _step_pending(fresh, 49, d, a, b)
        if seed is None:
            return out
    else:
        fresh = (KIND_D,)
        seed = ((1 << 2) | KIND_D,)
    cdef list stack = [(b"1", seed, ())]
    cdef bytes w, word
    cdef tuple threads, selfm, opened, nthreads
    cdef list nself
    cdef const unsigned char* wp
    cdef Py_ssize_t i
    cdef long m
    cdef int c, ref
    cdef bint beaten, ok
    while stack:
        word, threads, selfm = <tuple>stack.pop()
        if PyBytes_GET_SIZE(word) == n:
            if not _is_primitive(word) or _max_rotation(word) != word:
                continue
            if _periodization_vs(word, d) > 0:
                continue
            if hole:
                ok = True
                for i in range(n):
                    w = word[i:] + word[:i]
                    if (_periodization_vs(w, a) > 0
                            and _periodization_vs(w, b) < 0):
                        ok = False
                        break
                if not ok:
                    continue
            out.append(word.decode("ascii"))
            if cap and len(out) >= cap:
                out.sort()
                return out
            continue
        wp = word
        for c in (48, 49):
            beaten = False
            nself = []
            for m in selfm:
                ref = wp[m]
                if c > ref:
                    beaten = True
                    break
                if c == ref:
                    nself.append(m + 1)
            if beaten:
                continue
            if c == 49:
                if 1 not in nself:
                    nself.append(1)
            opened = threads + fresh
            nthreads = _step_pending(opened, c, d, a, b)
            if nthreads is None:
                continue
            stack.append((word + bytes((c,)), nthreads, tuple(nself)))
    out.sort()
    return out
