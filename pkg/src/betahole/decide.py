"""Classifying what survives a hole in the beta-shift.

For a hole (a, b) the survivor set collects the nonzero points whose whole
forward orbit stays weakly outside: every shift at most a or at least b,
strictly so when the hole is closed.  A subset automaton over pending
lexicographic comparisons recognizes exactly the admissible sequences
avoiding an open hole, and its live cycle structure separates the three
possible sizes of the survivor set:

* no reachable 1-edge: only the all-zero point avoids, the set is empty;
* every strongly connected piece a bare cycle: survivors are eventually
  periodic lassos, countably many;
* some piece with more edges than states: two distinct cycles through a
  common state pump an embedded binary tree, uncountably many.

Closed holes reuse the same graph.  Deleting endpoint-touching orbits
removes at most countably many points, so richness is unaffected, and a
bare cycle keeps its lassos exactly when no pending comparison survives a
full loop: a comparison that never resolves is an orbit point sitting on
an endpoint forever.

Also here: enumeration of admissible periodic orbits, the least period
carrying two of them, and the set of periods all of whose orbits meet a
hole.
"""

import math
from dataclasses import dataclass

from . import _kernels
from .beta_shift import _canon_offset, _step_offsets, check_expansion_of_one, is_admissible
from .words import EPSeq

DEFAULT_STATE_CAP = 10 ** 6

EMPTY = "Empty"
COUNTABLE = "CountableNonempty"
UNCOUNTABLE = "Uncountable"


class StateBudgetExceeded(RuntimeError):
    """The subset construction outgrew its state budget."""


@dataclass(frozen=True)
class HoleSpec:
    """An interval (a, b) that whole orbits are asked to avoid."""

    a: EPSeq
    b: EPSeq
    closed: bool = False

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("hole needs a < b")

    def clears(self, x: EPSeq) -> bool:
        """Whether the single point x lies clear of the hole."""
        if self.closed:
            return x < self.a or x > self.b
        return x <= self.a or x >= self.b


def avoids_hole(x: EPSeq, hole: HoleSpec) -> bool:
    """Whether the whole forward orbit of x clears the hole."""
    return all(hole.clears(s) for s in x.shifts())


def survives(x: EPSeq, d: EPSeq, hole: HoleSpec) -> bool:
    """Direct membership test for the survivor set: the oracle the automaton must agree with."""
    return not x.is_zero() and is_admissible(x, d) and avoids_hole(x, hole)


def _first_divergence(a: EPSeq, b: EPSeq) -> int:
    h = max(len(a.pre), len(b.pre)) + math.lcm(len(a.per), len(b.per))
    pa, pb = a.prefix(h), b.prefix(h)
    for i in range(h):
        if pa[i] != pb[i]:
            return i
    raise ValueError("endpoints coincide")


@dataclass(frozen=True)
class Classification:
    """Outcome of a hole decision.

    witnesses are eventually periodic survivors re-checked against the
    direct predicate; for an uncountable set, cycles holds two distinct
    cycle words readable from the state reached by access, and pumping
    arbitrary products of them stays inside the survivor set.  For a
    countable set, cycles lists the word of every reachable bare cycle.
    """

    kind: str
    witnesses: tuple
    access: str
    cycles: tuple
    states: int


def recurrent_kind(c: Classification) -> str:
    """The kind once survivors that fall into the zero tail stop counting.

    A lasso whose cycle is all zeros is a preimage of the fixed point
    zero.  The region pictures discount such points and keep only
    survivors carrying a one infinitely often, so a countable verdict
    built from zero cycles alone collapses to empty.
    """
    if c.kind == COUNTABLE and all(set(w) == {"0"} for w in c.cycles):
        return EMPTY
    return c.kind


class AvoiderAutomaton:
    """Deterministic partial automaton of open-hole avoidance.

    A state is a triple of offset sets: pending comparisons against the
    left endpoint, against the right endpoint after climbing over the
    left one, and against the expansion of one.  An edge exists when the
    emitted letter strands no started shift strictly inside the hole and
    breaks no admissibility constraint; every infinite path through the
    graph is an avoiding admissible sequence and conversely.

    Offsets wrap once both the preperiod and the divergence index of the
    endpoints are behind them, which keeps the graph finite without
    blurring the resolution rule at the divergence.
    """

    def __init__(self, d: EPSeq, hole: HoleSpec, state_cap: int = DEFAULT_STATE_CAP):
        check_expansion_of_one(d)
        self.d = d
        self.hole = hole
        a, b = hole.a, hole.b
        self.K = _first_divergence(a, b)
        # wrap bounds: offsets below stay literal, so the divergence test
        # always sees the true matched length
        self._ap = max(len(a.pre), self.K + 1)
        self._bp = max(len(b.pre), self.K + 1)
        self._build(state_cap)
        self._trim()

    # -- construction ---------------------------------------------------

    def _step(self, state, c):
        a, b, d = self.hole.a, self.hole.b, self.d
        A, B, D = state
        nD = _step_offsets(D, c, d, len(d.pre), len(d.per))
        if nD is None:
            return None
        nA, nB = set(), set()
        for i in (*A, 0):
            ca = a.letter(i)
            if c == ca:
                nA.add(_canon_offset(i + 1, self._ap, len(a.per)))
            elif c > ca:
                if i > self.K:
                    return None
                if i == self.K:
                    nB.add(_canon_offset(self.K + 1, self._bp, len(b.per)))
                # i < K: above both endpoints, the shift is clear
        for j in B:
            cb = b.letter(j)
            if c == cb:
                nB.add(_canon_offset(j + 1, self._bp, len(b.per)))
            elif c < cb:
                # past the divergence the shift already tops the left
                # endpoint, so dipping under the right one lands inside
                return None
        return (frozenset(nA), frozenset(nB), nD)

    def _build(self, state_cap):
        initial = (frozenset(), frozenset(), frozenset())
        self.states = [initial]
        index = {initial: 0}
        self.edges = []
        todo = [0]
        while todo:
            sid = todo.pop()
            state = self.states[sid]
            while len(self.edges) <= sid:
                self.edges.append({})
            for c in "01":
                nxt = self._step(state, c)
                if nxt is None:
                    continue
                tid = index.get(nxt)
                if tid is None:
                    tid = len(self.states)
                    if tid >= state_cap:
                        raise StateBudgetExceeded(
                            f"more than {state_cap} states while deciding the hole")
                    index[nxt] = tid
                    self.states.append(nxt)
                    todo.append(tid)
                self.edges[sid][c] = tid
        while len(self.edges) < len(self.states):
            self.edges.append({})

    def _trim(self):
        """Mark live states: those with an infinite outgoing path."""
        n = len(self.states)
        outdeg = [len(self.edges[s]) for s in range(n)]
        preds = [[] for _ in range(n)]
        for s in range(n):
            for t in self.edges[s].values():
                preds[t].append(s)
        dead = [s for s in range(n) if outdeg[s] == 0]
        gone = set(dead)
        while dead:
            v = dead.pop()
            for p in preds[v]:
                outdeg[p] -= 1
                if outdeg[p] == 0 and p not in gone:
                    gone.add(p)
                    dead.append(p)
        self.live = frozenset(s for s in range(n) if s not in gone)

    def live_successors(self, s):
        return [(c, t) for c, t in sorted(self.edges[s].items()) if t in self.live]

    # -- analysis --------------------------------------------------------

    def _reach(self):
        """Live states reachable from the start, with access words."""
        if 0 not in self.live:
            return [], {}
        word = {0: ""}
        order = [0]
        qi = 0
        while qi < len(order):
            s = order[qi]
            qi += 1
            for c, t in self.live_successors(s):
                if t not in word:
                    word[t] = word[s] + c
                    order.append(t)
        return order, word

    def _sccs(self, nodes):
        """Tarjan, iterative; returns components in reverse topological order."""
        nodeset = set(nodes)
        index, low, stack, on = {}, {}, [], set()
        comps = []
        counter = [0]
        for root in nodes:
            if root in index:
                continue
            work = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    index[v] = low[v] = counter[0]
                    counter[0] += 1
                    stack.append(v)
                    on.add(v)
                succ = [t for _, t in self.live_successors(v) if t in nodeset]
                if pi < len(succ):
                    work[-1] = (v, pi + 1)
                    w = succ[pi]
                    if w not in index:
                        work.append((w, 0))
                    elif w in on:
                        low[v] = min(low[v], index[w])
                else:
                    work.pop()
                    if work:
                        u = work[-1][0]
                        low[u] = min(low[u], low[v])
                    if low[v] == index[v]:
                        comp = []
                        while True:
                            w = stack.pop()
                            on.discard(w)
                            comp.append(w)
                            if w == v:
                                break
                        comps.append(comp)
        return comps

    def _cycle_of(self, comp):
        """The unique simple cycle through a bare nontrivial component.

        Returns (state ids in order, cycle word) or None for singletons
        without a self-loop.
        """
        compset = set(comp)
        s0 = min(comp)
        ids = [s0]
        letters = []
        cur = s0
        while True:
            nxt = [(c, t) for c, t in self.live_successors(cur) if t in compset]
            if not nxt:
                return None
            c, t = nxt[0]
            letters.append(c)
            if t == s0:
                return ids, "".join(letters)
            ids.append(t)
            cur = t

    def _thread_once(self, kind, off, c):
        a, b = self.hole.a, self.hole.b
        if kind == "a":
            cur = a.letter(off)
            if c == cur:
                return ("a", _canon_offset(off + 1, self._ap, len(a.per)))
            if c < cur or off < self.K:
                return None
            if off == self.K:
                return ("b", _canon_offset(self.K + 1, self._bp, len(b.per)))
            raise AssertionError("existing edge cannot strand a shift inside")
        cur = b.letter(off)
        if c == cur:
            return ("b", _canon_offset(off + 1, self._bp, len(b.per)))
        if c > cur:
            return None
        raise AssertionError("existing edge cannot strand a shift inside")

    def cycle_pins_endpoint(self, comp) -> bool:
        """Whether some pending comparison survives looping the cycle forever.

        A comparison that never resolves means every lasso into this cycle
        has an orbit point equal to an endpoint, which closed holes forbid.
        """
        cyc = self._cycle_of(comp)
        if cyc is None:
            return False
        ids, word = cyc
        A, B, _ = self.states[ids[0]]
        a, b = self.hole.a, self.hole.b
        bound = self._ap + len(a.per) + self._bp + len(b.per) + 2
        for tag in [("a", i) for i in A] + [("b", j) for j in B]:
            alive = tag
            for _ in range(bound):
                for c in word:
                    alive = self._thread_once(alive[0], alive[1], c)
                    if alive is None:
                        break
                if alive is None:
                    break
            if alive is not None:
                return True
        return False

    def classification(self) -> Classification:
        order, word = self._reach()
        nstates = len(self.states)
        reach = set(order)
        one_edges = []
        for s in order:
            for c, t in self.live_successors(s):
                if c == "1" and t in reach:
                    one_edges.append((s, t))
        if not one_edges:
            return Classification(EMPTY, (), "", (), nstates)

        comps = self._sccs(order)
        rich = None
        for comp in comps:
            compset = set(comp)
            inner = sum(1 for s in comp for _, t in self.live_successors(s) if t in compset)
            if inner > len(comp):
                rich = comp
                break
        if rich is not None:
            return self._classify_rich(rich, word, nstates)

        if not self.hole.closed:
            s, t = one_edges[0]
            pre, per = self._lasso(word[s] + "1", t)
            witness = EPSeq(pre, per)
            assert survives(witness, self.d, self.hole)
            kept = []
            for comp in comps:
                if len(comp) == 1 and not any(
                        t == comp[0] for _, t in self.live_successors(comp[0])):
                    continue
                ids, cw = self._cycle_of(comp)
                rot = ids.index(min(comp))
                kept.append(cw[rot:] + cw[:rot])
            return Classification(COUNTABLE, (witness,), pre, tuple(kept), nstates)

        # closed: a cycle only keeps its lassos when it pins no endpoint,
        # and a survivor still needs a 1 somewhere on the way in
        heads = {t for _, t in one_edges}
        from_heads = set()
        queue = list(heads)
        while queue:
            s = queue.pop()
            if s in from_heads:
                continue
            from_heads.add(s)
            queue.extend(t for _, t in self.live_successors(s))
        witness = None
        access = ""
        kept = []
        for comp in comps:
            if len(comp) == 1 and not any(
                    t == comp[0] for _, t in self.live_successors(comp[0])):
                continue
            if not (set(comp) & from_heads):
                continue
            if self.cycle_pins_endpoint(comp):
                continue
            entry = min(set(comp) & from_heads)
            ids, cw = self._cycle_of(comp)
            rot = ids.index(entry)
            cyc_word = cw[rot:] + cw[:rot]
            kept.append(cyc_word)
            if witness is not None:
                continue
            for s, t in one_edges:
                path = self._path(t, entry)
                if path is None:
                    continue
                witness = EPSeq(word[s] + "1" + path, cyc_word)
                access = word[s] + "1" + path
                assert survives(witness, self.d, self.hole)
                break
        if witness is not None:
            return Classification(
                COUNTABLE, (witness,), access, tuple(kept), nstates)
        return Classification(EMPTY, (), "", (), nstates)

    def _classify_rich(self, comp, word, nstates):
        compset = set(comp)
        fork = None
        for s in sorted(compset):
            inner = [(c, t) for c, t in self.live_successors(s) if t in compset]
            if len(inner) == 2:
                fork = s
                break
        assert fork is not None
        cycles = []
        for c, t in sorted(self.edges[fork].items()):
            back = self._path(t, fork, within=compset)
            cycles.append(c + back)
        access = word[fork]
        wits = []
        for per in (cycles[0], cycles[1], cycles[0] + cycles[1]):
            cand = EPSeq(access, per)
            if survives(cand, self.d, self.hole):
                wits.append(cand)
        if self.hole.closed and not wits:
            for i in range(2, 5):
                cand = EPSeq(access, cycles[0] * i + cycles[1])
                if survives(cand, self.d, self.hole):
                    wits.append(cand)
                    break
        return Classification(UNCOUNTABLE, tuple(wits), access, tuple(cycles), nstates)

    def _path(self, src, dst, within=None):
        """Label word of a live path src -> dst, or None; empty when equal."""
        if src == dst:
            return ""
        seen = {src: ""}
        queue = [src]
        qi = 0
        while qi < len(queue):
            s = queue[qi]
            qi += 1
            for c, t in self.live_successors(s):
                if within is not None and t not in within:
                    continue
                if t not in seen:
                    seen[t] = seen[s] + c
                    if t == dst:
                        return seen[t]
                    queue.append(t)
        return None

    def _lasso(self, prefix, start):
        """Extend along live edges, zeros first, until a state repeats."""
        letters = []
        seen = {start: 0}
        cur = start
        while True:
            c, t = self.live_successors(cur)[0]
            letters.append(c)
            if t in seen:
                k = seen[t]
                return prefix + "".join(letters[:k]), "".join(letters[k:])
            seen[t] = len(letters)
            cur = t


def classify(d: EPSeq, hole: HoleSpec, state_cap: int = DEFAULT_STATE_CAP) -> Classification:
    """Trichotomy for the survivor set of a hole under the given expansion of one."""
    return AvoiderAutomaton(d, hole, state_cap).classification()


def decide_hole(d: EPSeq, a: EPSeq, b: EPSeq, closed: bool = False,
                state_cap: int = DEFAULT_STATE_CAP) -> Classification:
    return classify(d, HoleSpec(a, b, closed), state_cap)


def brute_force_nonempty(d: EPSeq, hole: HoleSpec, depth: int = 80) -> bool:
    """Depth-limited word search, independent of the automaton.

    True when some admissible open-hole-avoiding word starting with 1 is
    still alive at the requested depth.  Pinning the first letter is sound
    because the avoidance set is shift invariant: it contains a nonzero
    point iff it contains one whose expansion starts with 1.
    """
    word = _kernels.survivor_example(
        d.pre, d.per, hole.a.pre, hole.a.per, hole.b.pre, hole.b.per,
        depth, leading_one=True)
    return word is not None


def periodic_orbits(d: EPSeq, n: int) -> list:
    """Greatest-rotation representatives of admissible orbits of least period n."""
    check_expansion_of_one(d)
    return list(_kernels.admissible_necklaces(d.pre, d.per, n))


def n_beta(d: EPSeq, n_cap: int = 64) -> int:
    """Least period carrying at least two admissible orbits."""
    check_expansion_of_one(d)
    for n in range(1, n_cap + 1):
        if len(_kernels.admissible_necklaces(d.pre, d.per, n, cap=2)) >= 2:
            return n
    raise RuntimeError(f"no period up to {n_cap} carries two orbits")


def bad_n(d: EPSeq, hole: HoleSpec, n_max: int) -> set:
    """Periods in (n_beta, n_max] whose every admissible orbit meets the hole.

    Meeting means a point strictly inside; endpoints shelter the orbit
    whether or not the hole is closed, matching the role these periods
    play for the interval geometry rather than for single holes.
    """
    check_expansion_of_one(d)
    out = set()
    for n in range(n_beta(d) + 1, n_max + 1):
        hit = _kernels.avoiding_necklace(
            d.pre, d.per, hole.a.pre, hole.a.per, hole.b.pre, hole.b.per, n)
        if hit is None:
            out.add(n)
    return out
