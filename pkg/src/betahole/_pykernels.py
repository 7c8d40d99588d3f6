"""Search kernels: necklace enumeration and depth-limited survivor search.

Everything here speaks plain strings.  An eventually periodic sequence is
passed as a (preperiod, period) pair of '0'/'1' strings, a hole as two such
pairs, and results come back as strings.  Keeping the layer this primitive
lets the compiled twin in ``_core`` mirror it line for line, and keeps the
brute-force oracles independent of the symbolic machinery they are meant to
check.

Word-level semantics: a shift of the word under construction is fatal once
its comparison against the expansion of one resolves above, or once its
comparison against the hole resolves strictly inside (above the left
endpoint and below the right one).  Unresolved comparisons are kept alive;
open-hole semantics, where landing exactly on an endpoint is harmless,
come out of the strictness for free.
"""

from math import lcm


def seq_letter(pre: str, per: str, i: int) -> str:
    return pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)]


def seq_prefix(pre: str, per: str, n: int) -> str:
    if n <= len(pre):
        return pre[:n]
    reps = -(-(n - len(pre)) // len(per))
    return (pre + per * reps)[:n]


def periodization_vs(word: str, pre: str, per: str) -> int:
    """Compare (word)^inf with the sequence (pre, per); returns -1, 0 or 1.

    Agreement over one joint period past the preperiod forces equality, so
    the comparison is exact.
    """
    h = len(pre) + lcm(len(word), len(per))
    reps = -(-h // len(word))
    left = (word * reps)[:h]
    right = seq_prefix(pre, per, h)
    if left < right:
        return -1
    return 0 if left == right else 1


def _step_pending(threads, c, dpp, app, bpp):
    """Advance every pending shift comparison by one letter.

    threads is an iterable of (kind, offset): kind 'd' tracks a tight match
    against the expansion of one, 'a' a tight match against the left hole
    endpoint, 'b' one against the right endpoint after an upward deviation
    from the left.  Returns None when some shift is confirmed inadmissible
    or strictly inside the hole, else the new thread tuple.  Fresh shifts
    for the position just emitted are opened by the caller passing in
    ('d', 0) and ('a', 0).
    """
    out = set()
    for kind, off in threads:
        if kind == "d":
            cur = seq_letter(dpp[0], dpp[1], off)
            if c > cur:
                return None
            if c == cur:
                out.add(("d", off + 1))
        elif kind == "a":
            cur = seq_letter(app[0], app[1], off)
            if c == cur:
                out.add(("a", off + 1))
            elif c > cur:
                p = seq_prefix(app[0], app[1], off) + c
                t = seq_prefix(bpp[0], bpp[1], off + 1)
                if p < t:
                    return None
                if p == t:
                    out.add(("b", off + 1))
        else:
            cur = seq_letter(bpp[0], bpp[1], off)
            if c == cur:
                out.add(("b", off + 1))
            elif c < cur:
                p = seq_prefix(bpp[0], bpp[1], off) + c
                t = seq_prefix(app[0], app[1], off + 1)
                if p > t:
                    return None
                if p == t:
                    out.add(("a", off + 1))
    return tuple(sorted(out))


def survivor_count(d_pre, d_per, a_pre, a_per, b_pre, b_per, depth, cap=0,
                   require_one=False):
    """Number of admissible length-depth words avoiding the open hole.

    Every word starts from the empty history, so shifts at all positions of
    the word are tracked.  cap > 0 returns early once that many survivors
    are seen; require_one discards the all-zero word.
    """
    dpp, app, bpp = (d_pre, d_per), (a_pre, a_per), (b_pre, b_per)
    count = 0
    stack = [(0, False, ())]
    while stack:
        length, has_one, threads = stack.pop()
        if length == depth:
            if has_one or not require_one:
                count += 1
                if cap and count >= cap:
                    return count
            continue
        opened = threads + (("d", 0), ("a", 0))
        for c in "01":
            nxt = _step_pending(opened, c, dpp, app, bpp)
            if nxt is not None:
                stack.append((length + 1, has_one or c == "1", nxt))
    return count


def survivor_example(d_pre, d_per, a_pre, a_per, b_pre, b_per, depth,
                     require_one=False, leading_one=False):
    """One admissible avoiding word of the requested length, or None.

    leading_one pins the first letter to '1'.  The avoidance set is shift
    invariant, so it holds a nonzero point iff it holds one starting with
    '1'; pinning kills the spurious survivors whose only ones sit so close
    to the tail that their comparisons never resolve within the depth.
    """
    dpp, app, bpp = (d_pre, d_per), (a_pre, a_per), (b_pre, b_per)
    stack = [("", ())]
    if leading_one:
        seed = _step_pending((("d", 0), ("a", 0)), "1", dpp, app, bpp)
        stack = [] if seed is None else [("1", seed)]
    while stack:
        word, threads = stack.pop()
        if len(word) == depth:
            if require_one and "1" not in word:
                continue
            return word
        opened = threads + (("d", 0), ("a", 0))
        for c in "01":
            nxt = _step_pending(opened, c, dpp, app, bpp)
            if nxt is not None:
                stack.append((word + c, nxt))
    return None


def _max_rotation(w: str) -> str:
    return max(w[i:] + w[:i] for i in range(len(w)))


def _is_primitive(w: str) -> bool:
    return (w + w).find(w, 1) == len(w)


def admissible_necklaces(d_pre, d_per, n, cap=0):
    """Primitive admissible cyclic words of length n, one per orbit.

    Each orbit is reported by its greatest rotation; output is sorted.
    Since the representative dominates every rotation, a single
    periodization test against the expansion of one settles admissibility
    of the whole orbit.  cap > 0 stops the search early.
    """
    return _dfs_necklaces(d_pre, d_per, n, None, None, cap)


def avoiding_necklace(d_pre, d_per, a_pre, a_per, b_pre, b_per, n):
    """First admissible orbit of least period n with no point strictly inside.

    Returns the greatest rotation, or None.  A point of the orbit lands
    weakly outside when its periodization is at most the left endpoint or
    at least the right one; both comparisons are exact.
    """
    res = _dfs_necklaces(d_pre, d_per, n, (a_pre, a_per), (b_pre, b_per), 1)
    return res[0] if res else None


def avoiding_necklaces(d_pre, d_per, a_pre, a_per, b_pre, b_per, n, cap=0):
    """All admissible orbits of least period n avoiding the open hole.

    Same convention as avoiding_necklace; cap > 0 stops early once that
    many orbits are found.
    """
    return _dfs_necklaces(d_pre, d_per, n, (a_pre, a_per), (b_pre, b_per), cap)


def _dfs_necklaces(d_pre, d_per, n, app, bpp, cap):
    dpp = (d_pre, d_per)
    out = []
    if n <= 0:
        return out
    hole = app is not None
    # the leading letter of a greatest rotation is forced
    if hole:
        seed = _step_pending((("d", 0), ("a", 0)), "1", dpp, app, bpp)
        if seed is None:
            return out
    else:
        seed = (("d", 1),)
    # self-threads hold tight suffix/prefix matches of the prefix built so
    # far; a suffix pulling ahead means some rotation beats the word.
    stack = [(["1"], seed, frozenset())]
    while stack:
        letters, threads, selfm = stack.pop()
        if len(letters) == n:
            w = "".join(letters)
            if not _is_primitive(w) or _max_rotation(w) != w:
                continue
            if periodization_vs(w, d_pre, d_per) > 0:
                continue
            if hole:
                ok = True
                for i in range(n):
                    r = w[i:] + w[:i]
                    if periodization_vs(r, *app) > 0 and periodization_vs(r, *bpp) < 0:
                        ok = False
                        break
                if not ok:
                    continue
            out.append(w)
            if cap and len(out) >= cap:
                return sorted(out)
            continue
        for c in "01":
            beaten = False
            nself = set()
            for m in selfm:
                ref = letters[m]
                if c > ref:
                    beaten = True
                    break
                if c == ref:
                    nself.add(m + 1)
            if beaten:
                continue
            if c == "1":
                nself.add(1)
            opened = threads + ((("d", 0), ("a", 0)) if hole else (("d", 0),))
            nthreads = _step_pending(opened, c, dpp, app or ("", "0"), bpp or ("", "1"))
            if nthreads is None:
                continue
            stack.append((letters + [c], nthreads, frozenset(nself)))
    return sorted(out)
