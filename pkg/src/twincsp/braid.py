"""Braid group arithmetic with Garside left-greedy normal forms.

The braid group B_n is generated by s_1 .. s_{n-1} subject to
s_i s_j s_i = s_j s_i s_j for |i-j| = 1 and s_i s_j = s_j s_i for
|i-j| >= 2.  Two representations are used:

- BraidWord: a free word in signed generators; cheap to build, the
  universal input format.  Letter +i means s_i, letter -i means s_i^{-1}.
- CanonicalForm: the left-greedy normal form D^p A_1 ... A_k, where D is
  the half twist and each A_i is a permutation braid (a positive braid in
  which every pair of strands crosses at most once, identified with its
  strand permutation).  The normal form is unique, so it decides equality
  and is the only thing ever hashed or serialized.

Normal forms are computed the classical way.  A factor pair (A, B) is
left-weighted iff S(B) is a subset of F(A), where the starting set S and
finishing set F are the descent sets of the inverse permutation and the
permutation respectively.  Whenever some i lies in S(B) but not F(A), one
crossing moves: A gains a final s_i, B loses a leading s_i.  Repeating
until every adjacent pair is left-weighted yields the normal form, with
half twists collected at the front (a factor equal to D absorbs its way
leftward through the fixes) and identity factors dropped.  A negative
letter s_i^{-1} enters as D^{-1} times the permutation braid rev . t_i,
and D powers migrate to the front through the flip automorphism
tau(s_i) = s_{n-i}, which has order two.

All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import permutations as pm
from .permutations import Perm


class StrandMismatchError(ValueError):
    """Raised when operands live in braid groups with different strand counts."""


def _check_same_strands(a: "BraidWord | CanonicalForm", b: "BraidWord | CanonicalForm") -> None:
    if a.n != b.n:
        raise StrandMismatchError(f"strand counts differ: {a.n} != {b.n}")


@dataclass(frozen=True)
class BraidWord:
    """A free word in signed Artin generators of B_n."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 strands")
        object.__setattr__(self, "letters", tuple(self.letters))
        for v in self.letters:
            if not 1 <= abs(v) <= self.n - 1:
                raise ValueError(f"letter {v} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return multiply(self, other)


@dataclass(frozen=True)
class PermutationBraid:
    """A positive braid in which each strand pair crosses at most once."""

    n: int
    perm: Perm

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        if len(self.perm) != self.n or not pm.is_permutation(self.perm):
            raise ValueError(f"not a permutation of 0..{self.n - 1}: {self.perm}")

    def is_identity(self) -> bool:
        return self.perm == pm.identity(self.n)

    def is_half_twist(self) -> bool:
        return self.perm == pm.half_twist(self.n)

    def starting_set(self) -> frozenset[int]:
        """Generator indices that can begin a positive word for this braid."""
        return pm.descents(pm.inverse(self.perm))

    def finishing_set(self) -> frozenset[int]:
        """Generator indices that can end a positive word for this braid."""
        return pm.descents(self.perm)

    def crossing_count(self) -> int:
        return pm.inversion_count(self.perm)


@dataclass(frozen=True)
class CanonicalForm:
    """Left-greedy normal form D^delta_exp A_1 ... A_k.

    Factors exclude the identity and the half twist, and every adjacent
    pair is left-weighted; two group-equal words always yield equal
    CanonicalForm values.
    """

    n: int
    delta_exp: int
    factors: tuple[PermutationBraid, ...] = ()

    def __mul__(self, other: "CanonicalForm") -> "CanonicalForm":
        return nf_multiply(self, other)

    def inverse(self) -> "CanonicalForm":
        return nf_invert(self)

    def is_identity(self) -> bool:
        return self.delta_exp == 0 and not self.factors

    def canonical_length(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class GroupParams:
    """Public parameters: B_n split as n = l + r, base element g, sample length W.

    The left subgroup uses generator indices 1..l-1, the right subgroup
    l+1..n-1; index l is used by neither side, which is what makes the two
    subgroups commute elementwise.
    """

    l: int
    r: int
    g: BraidWord
    W: int = 16

    def __post_init__(self):
        if self.l < 2 or self.r < 2:
            raise ValueError("both subgroups must be nontrivial: need l >= 2 and r >= 2")
        if self.W < 1:
            raise ValueError("sample length W must be >= 1")
        if self.g.n != self.n:
            raise StrandMismatchError(f"base element lives in B_{self.g.n}, params say B_{self.n}")

    @property
    def n(self) -> int:
        return self.l + self.r


# Fixed default base element of B_16: mixes both halves and uses the coupling
# generator s_8, so conjugation does not split across the subgroups.
DEFAULT_G_LETTERS = (1, 9, 8, 3, 12, -8, 5, 14, 8, -2, 11, -7, 4, 13, 8, 6)


def default_params(l: int = 8, r: int = 8, W: int = 16) -> GroupParams:
    """Desk-scale defaults: B_16 with the fixed published base word."""
    n = l + r
    if (l, r) == (8, 8):
        g = BraidWord(n, DEFAULT_G_LETTERS)
    else:
        # Scale the fixed pattern into range for other splits.
        g = BraidWord(n, tuple(
            (abs(v) - 1) % (n - 1) + 1 if v > 0 else -((abs(v) - 1) % (n - 1) + 1)
            for v in DEFAULT_G_LETTERS
        ))
    return GroupParams(l=l, r=r, g=g, W=W)


# ---------------------------------------------------------------------------
# Word-level operations
# ---------------------------------------------------------------------------

def free_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Cancel adjacent s_i s_i^{-1} pairs until none remain."""
    out: list[int] = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def multiply(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenation word for a*b, freely reduced."""
    _check_same_strands(a, b)
    return BraidWord(a.n, free_reduce(a.letters + b.letters))


def invert(a: BraidWord) -> BraidWord:
    """Reversed word with flipped signs, freely reduced."""
    return BraidWord(a.n, free_reduce(tuple(-v for v in reversed(a.letters))))


def conjugate(a: BraidWord, t: BraidWord) -> BraidWord:
    """t * a * t^{-1}."""
    _check_same_strands(a, t)
    return multiply(multiply(t, a), invert(t))


def permutation_of(a: BraidWord) -> PermutationBraid:
    """Image of the word in the symmetric group (signs ignored)."""
    p = pm.identity(a.n)
    for v in a.letters:
        p = pm.compose(p, pm.transposition(a.n, abs(v)))
    return PermutationBraid(a.n, p)


def delta(n: int) -> BraidWord:
    """The half twist D_n = (s_1 .. s_{n-1})(s_1 .. s_{n-2}) .. (s_1)."""
    if n < 2:
        raise ValueError("need at least 2 strands")
    letters = [j for k in range(n - 1, 0, -1) for j in range(1, k + 1)]
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# The normal-form engine
# ---------------------------------------------------------------------------

def _left_weight_pair(a: list[int], b: list[int], n: int) -> bool:
    """Transfer crossings from the head of b to the tail of a (in place)
    until S(b) is a subset of F(a).  Returns True if anything moved.

    i is in S(b) iff value i-1 sits after value i in b, i.e. the inverse
    table has a descent at i; i is in F(a) iff a[i-1] > a[i].  A transfer
    swaps two adjacent positions of a and two adjacent values of b, so the
    inverse table of b is maintained incrementally and only descent
    positions >= i-1 need rechecking after a transfer at i.
    """
    binv = [0] * n
    for pos, v in enumerate(b):
        binv[v] = pos
    moved = False
    i = 1
    while i < n:
        if binv[i - 1] > binv[i] and a[i - 1] <= a[i]:
            a[i - 1], a[i] = a[i], a[i - 1]
            j1, j2 = binv[i - 1], binv[i]
            b[j1], b[j2] = i, i - 1
            binv[i - 1], binv[i] = j2, j1
            moved = True
            if i > 1:
                i -= 1
        else:
            i += 1
    return moved


def _normalize_factors(factors: list[list[int]], n: int) -> tuple[int, list[Perm]]:
    """Left-weight a factor sequence; returns (extracted half-twist power,
    remaining factors with identities dropped and half twists stripped
    from the front)."""
    ident = list(range(n))
    facs = [f for f in factors if f != ident]
    i = 0
    while i < len(facs) - 1:
        if _left_weight_pair(facs[i], facs[i + 1], n):
            if facs[i + 1] == ident:
                del facs[i + 1]
            i = i - 1 if i > 0 else 0
        else:
            i += 1
    rev = list(range(n - 1, -1, -1))
    dp = 0
    while facs and facs[0] == rev:
        dp += 1
        del facs[0]
    return dp, [tuple(f) for f in facs]


def _collect_deltas(entries: list) -> tuple[int, list[list[int]]]:
    """Push interleaved half-twist powers to the front of a factor sequence.

    entries is a left-to-right list of either an int (a half-twist power)
    or a permutation (list/tuple).  Moving D^d leftward past a factor A
    replaces A by tau^d(A); tau has order two, so only parity matters.
    """
    total = 0
    out: list[list[int]] = []
    for e in reversed(entries):
        if isinstance(e, int):
            total += e
        else:
            out.append(list(pm.flip(tuple(e))) if total % 2 else list(e))
    out.reverse()
    return total, out


def _assemble(n: int, entries: list) -> CanonicalForm:
    dtot, facs = _collect_deltas(entries)
    dp, tuples = _normalize_factors(facs, n)
    return CanonicalForm(n, dtot + dp, tuple(PermutationBraid(n, p) for p in tuples))


def normal_form(a: BraidWord) -> CanonicalForm:
    """Unique left-greedy normal form of a word; group-equal words agree."""
    n = a.n
    rev = pm.half_twist(n)
    entries: list = []
    for v in a.letters:
        t = pm.transposition(n, abs(v))
        if v > 0:
            entries.append(t)
        else:
            # s_i^{-1} = D^{-1} * (permutation braid rev . t_i)
            entries.append(-1)
            entries.append(pm.compose(rev, t))
    return _assemble(n, entries)


def nf_multiply(x: CanonicalForm, y: CanonicalForm) -> CanonicalForm:
    """Product of two canonical forms, renormalized."""
    _check_same_strands(x, y)
    entries: list = [x.delta_exp]
    entries.extend(f.perm for f in x.factors)
    entries.append(y.delta_exp)
    entries.extend(f.perm for f in y.factors)
    return _assemble(x.n, entries)


def nf_invert(x: CanonicalForm) -> CanonicalForm:
    """Inverse of a canonical form: A^{-1} = D^{-1} * (rev . A^{-1}-perm)
    for each factor, reversed, then D powers collected."""
    n = x.n
    rev = pm.half_twist(n)
    entries: list = []
    for f in reversed(x.factors):
        entries.append(-1)
        entries.append(pm.compose(rev, pm.inverse(f.perm)))
    entries.append(-x.delta_exp)
    return _assemble(n, entries)


def nf_conjugate(x: CanonicalForm, t: BraidWord) -> CanonicalForm:
    """normal_form(t * x * t^{-1}) computed without leaving canonical forms."""
    tf = normal_form(t)
    return nf_multiply(nf_multiply(tf, x), nf_invert(tf))


def equals(a: BraidWord, b: BraidWord) -> bool:
    """Group equality, decided by comparing normal forms."""
    _check_same_strands(a, b)
    return normal_form(a) == normal_form(b)


def word_of(cf: CanonicalForm) -> BraidWord:
    """Expand a canonical form back into a braid word."""
    n = cf.n
    letters: list[int] = []
    dword = delta(n).letters
    if cf.delta_exp >= 0:
        letters.extend(dword * cf.delta_exp)
    else:
        letters.extend(tuple(-v for v in reversed(dword)) * (-cf.delta_exp))
    for f in cf.factors:
        letters.extend(_positive_word(f.perm))
    return BraidWord(n, tuple(letters))


def _positive_word(p: Perm) -> list[int]:
    """A reduced positive word for a permutation braid, by stripping final
    descents."""
    cur = list(p)
    n = len(cur)
    out: list[int] = []
    while True:
        for i in range(1, n):
            if cur[i - 1] > cur[i]:
                out.append(i)
                cur[i - 1], cur[i] = cur[i], cur[i - 1]
                break
        else:
            break
    out.reverse()
    return out
