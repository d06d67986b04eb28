"""KLR generator alphabet, gradings, and symmetric-group word machinery.

Words are tuples of nonzero ints read top to bottom in the diagram:
``+r`` is the crossing of strands at positions r, r+1 and ``-s`` is a dot
on the strand at position s.  An element ``v . word`` attaches the word
below ``v``, so the first letter sits at the top.

The canonical reduced word of a permutation stacks the crossings of each
strand above those of all smaller strands.  For every triple of pairwise
crossing strands x < y < z this forces the crossing order (x,y), (x,z),
(y,z) from bottom to top, which is exactly the three-strand picture the
basis convention pins for residue patterns (i, i+-1, i).
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from .combinatorics import Multipartition, StandardTableau, initial_tableau, residue


# ---------------------------------------------------------------------------
# Cartan data


def cartan_a(i: int, j: int, e: Optional[int]) -> int:
    """Symmetrized Cartan pairing of two residues."""
    if e is not None:
        i %= e
        j %= e
    if i == j:
        return 2
    if e is None:
        return -1 if abs(i - j) == 1 else 0
    if e == 2:
        return -2  # double bond; i != j mod 2 means adjacent both ways
    if (i - j) % e in (1, e - 1):
        return -1
    return 0


def weight_multiplicity(kappa: Sequence[int], i: int, e: Optional[int]) -> int:
    """(Lambda(kappa), alpha_i): how many kappa entries equal the residue i."""
    if e is not None:
        i %= e
    return sum(1 for k in kappa if k == i)


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class Psi:
    r: int


@dataclass(frozen=True)
class Dot:
    s: int


@dataclass(frozen=True)
class Idem:
    iseq: tuple


Generator = object  # Psi | Dot | Idem


def generator_degree(g, iseq: Sequence[int], e: Optional[int]) -> int:
    """Degree of a generator under the bottom residue sequence iseq."""
    if isinstance(g, Idem):
        return 0
    if isinstance(g, Dot):
        return 2
    if isinstance(g, Psi):
        return -cartan_a(iseq[g.r - 1], iseq[g.r], e)
    raise TypeError(f"not a generator: {g!r}")


@dataclass(frozen=True)
class KlrWord:
    n: int
    gens: tuple

    def __post_init__(self):
        for g in self.gens:
            if isinstance(g, Psi) and not 1 <= g.r < self.n:
                raise ValueError(f"psi index {g.r} out of range for n={self.n}")
            if isinstance(g, Dot) and not 1 <= g.s <= self.n:
                raise ValueError(f"dot index {g.s} out of range for n={self.n}")

    def render(self) -> str:
        toks = []
        for g in self.gens:
            if isinstance(g, Psi):
                toks.append(f"p{g.r}")
            elif isinstance(g, Dot):
                toks.append(f"y{g.s}")
            else:
                toks.append("e(" + ",".join(str(i) for i in g.iseq) + ")")
        return " ".join(toks) if toks else "1"

    def to_json(self):
        out = []
        for g in self.gens:
            if isinstance(g, Psi):
                out.append(["p", g.r])
            elif isinstance(g, Dot):
                out.append(["y", g.s])
            else:
                out.append(["e", list(g.iseq)])
        return {"n": self.n, "gens": out}

    @staticmethod
    def from_json(data) -> "KlrWord":
        gens = []
        for tag, val in data["gens"]:
            if tag == "p":
                gens.append(Psi(val))
            elif tag == "y":
                gens.append(Dot(val))
            else:
                gens.append(Idem(tuple(val)))
        return KlrWord(data["n"], tuple(gens))


def propagate_residues(iseq: Sequence[int], word: KlrWord) -> tuple:
    """Push a bottom residue sequence to the top of the diagram."""
    seq = list(iseq)
    for g in reversed(word.gens):
        if isinstance(g, Psi):
            seq[g.r - 1], seq[g.r] = seq[g.r], seq[g.r - 1]
    return tuple(seq)


# ---------------------------------------------------------------------------
# plain psi-words as int tuples


def word_tops(word, n: int) -> list:
    """Top position of each bottom position (1-based list at index p-1)."""
    tops = list(range(1, n + 1))
    for a in reversed(word):
        if a > 0:
            # positions a, a+1 swap going up
            for idx, pos in enumerate(tops):
                if pos == a:
                    tops[idx] = a + 1
                elif pos == a + 1:
                    tops[idx] = a
    return tops


def perm_of_word(word, n: int) -> tuple:
    return tuple(word_tops([a for a in word if a > 0], n))


def inversions(perm: Sequence[int]) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def is_reduced(word, n: int) -> bool:
    psis = [a for a in word if a > 0]
    return inversions(perm_of_word(psis, n)) == len(psis)


def canon_word(perm: Sequence[int]) -> tuple:
    """Canonical reduced word: each strand's crossings above all smaller strands'."""
    perm = list(perm)
    word = []
    while len(perm) > 1:
        n = len(perm)
        tau = perm[-1]
        word.extend(range(tau, n))  # [tau, tau+1, ..., n-1] top to bottom
        perm = [p if p < tau else p - 1 for p in perm[:-1]]
    return tuple(word)


def tableau_permutation(t: StandardTableau) -> tuple:
    """perm[k-1] = position of entry k in the initial-tableau numbering."""
    tlam = initial_tableau(t.shape)
    inv = t.inverse()
    return tuple(tlam.value_at(inv[k]) for k in range(1, t.n + 1))


@dataclass(frozen=True)
class ReducedWord:
    permutation: tuple
    word: tuple

    def __post_init__(self):
        n = len(self.permutation)
        if perm_of_word(self.word, n) != tuple(self.permutation):
            raise ValueError("word does not realize the permutation")
        if len(self.word) != inversions(self.permutation):
            raise ValueError("word is not reduced")


def canonical_reduced_word(t: StandardTableau) -> ReducedWord:
    perm = tableau_permutation(t)
    return ReducedWord(perm, canon_word(perm))


def crossing_sequence(word, n: int) -> list:
    """Crossed bottom-label pairs, listed bottom to top."""
    strands = list(range(1, n + 1))  # strands by current position, bottom up
    out = []
    for a in reversed(word):
        if a > 0:
            out.append((strands[a - 1], strands[a]))
            strands[a - 1], strands[a] = strands[a], strands[a - 1]
    return out


def verify_321_convention(t: StandardTableau, w: ReducedWord, e, kappa) -> bool:
    """Check the pinned three-strand picture on qualifying 321 patterns."""
    n = t.n
    if not is_reduced(w.word, n):
        raise ValueError("word is not reduced")
    inv = t.inverse()
    res = [residue(inv[k], e, kappa) for k in range(1, n + 1)]
    nodes = [inv[k] for k in range(1, n + 1)]
    crossings = crossing_sequence(w.word, n)
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            if nodes[x - 1] < nodes[y - 1]:
                continue
            for z in range(y + 1, n + 1):
                if not nodes[y - 1] > nodes[z - 1]:
                    continue
                i, j, k = res[x - 1], res[y - 1], res[z - 1]
                if i != k:
                    continue
                if cartan_a(i, j, e) >= 0 or i == j:
                    continue  # only residues (i, i+-1, i) are pinned
                seq = [frozenset(p) for p in crossings
                       if set(p) <= {x, y, z} and len(set(p) & {x, y, z}) == 2]
                expect = [frozenset((x, y)), frozenset((x, z)), frozenset((y, z))]
                if seq != expect:
                    return False
    return True


# ---------------------------------------------------------------------------
# rewriting reduced words with braid corrections
#
# Corrections are (coeff, word) pairs valid below the same top sequence as
# the input word; braid moves only fire corrections when the two outer
# strands carry one residue, per the three-strand relation.


def _braid_corrections(r: int, below, e, direction: int, tail):
    """Correction terms for [r, r+1, r] <-> [r+1, r, r+1] over the sequence
    just below the triple; direction +1 rewrites the left-dip into the
    right-dip form, -1 the other way."""
    i_r, i_m, i_k = below[r - 1], below[r], below[r + 1]
    if i_r != i_k:
        return []
    if e == 2:
        if i_m == i_r:
            return []
        # correction polynomial y_r + y_{r+2} - 2 y_{r+1}
        return [
            (direction, (-r,) + tail),
            (direction, (-(r + 2),) + tail),
            (-2 * direction, (-(r + 1),) + tail),
        ]
    if cartan_a(i_r, i_m, e) != -1:
        return []
    diff = 1 if (e is None and i_r == i_m + 1) or (e is not None and (i_r - i_m) % e == 1) else -1
    return [(direction * diff, tail)]


def make_first(word: tuple, j: int, top_seq: tuple, e):
    """Rewrite a reduced word to start with letter j.

    Requires that the strands ending at top positions j, j+1 cross.
    Returns (corrections, new_word); corrections are shorter words equal in
    sum to the difference, below the same top sequence.
    """
    a = word[0]
    if a == j:
        return [], word
    seq_inside = list(top_seq)
    seq_inside[a - 1], seq_inside[a] = seq_inside[a], seq_inside[a - 1]
    seq_inside = tuple(seq_inside)
    if abs(a - j) >= 2:
        corr, v = make_first(word[1:], j, seq_inside, e)
        corr = [(c, (a,) + w) for c, w in corr]
        return corr, (j, a) + v[1:]
    # a == j +- 1: build the braid pattern [a, j, a] at the head
    corr1, v1 = make_first(word[1:], j, seq_inside, e)
    seq2 = list(seq_inside)
    seq2[j - 1], seq2[j] = seq2[j], seq2[j - 1]
    corr2, v2 = make_first(v1[1:], a, tuple(seq2), e)
    corr = [(c, (a,) + w) for c, w in corr1]
    corr += [(c, (a, j) + w) for c, w in corr2]
    tail = v2[1:]
    r = min(a, j)
    # sequence below the triple: top_seq with positions r, r+2 swapped
    below = list(top_seq)
    below[r - 1], below[r + 1] = below[r + 1], below[r - 1]
    if a == j + 1:
        # [j+1, j, j+1] -> [j, j+1, j]: right-dip to left-dip, direction -1
        corr += _braid_corrections(r, below, e, -1, tail)
    else:
        # [j-1, j, j-1] -> [j, j-1, j]: left-dip to right-dip, direction +1
        corr += _braid_corrections(r, below, e, +1, tail)
    return corr, (j, a, j) + tail


def make_last(word: tuple, q: int, top_seq: tuple, e):
    """Rewrite a reduced word to end with letter q.

    Requires that the strands at bottom positions q, q+1 cross.
    """
    a = word[-1]
    if a == q:
        return [], word
    if abs(a - q) >= 2:
        corr, v = make_last(word[:-1], q, top_seq, e)
        corr = [(c, w + (a,)) for c, w in corr]
        return corr, v[:-1] + (a, q)
    corr1, v1 = make_last(word[:-1], q, top_seq, e)
    corr2, v2 = make_last(v1[:-1], a, top_seq, e)
    corr = [(c, w + (a,)) for c, w in corr1]
    corr += [(c, w + (q, a)) for c, w in corr2]
    head = v2[:-1]
    r = min(a, q)
    below = bottom_seq(top_seq, word)
    if a == q + 1:
        # tail [q+1, q, q+1] -> [q, q+1, q]: right-dip to left-dip, direction -1
        extra = _braid_corrections(r, below, e, -1, ())
    else:
        extra = _braid_corrections(r, below, e, +1, ())
    # dot corrections attach where the triple was, at the very bottom
    corr += [(c, head + w) for c, w in extra]
    return corr, head + (q, a, q)


def bottom_seq(top_seq: tuple, word) -> tuple:
    """Residue sequence at the bottom of a psi-word below top_seq."""
    seq = list(top_seq)
    for a in word:
        if a > 0:
            seq[a - 1], seq[a] = seq[a], seq[a - 1]
    return tuple(seq)


def to_target_word(word: tuple, target: tuple, top_seq: tuple, e):
    """Rewrite a reduced word into a chosen reduced word of the same
    permutation, peeling the target from the front."""
    corr_all = []
    prefix = ()
    seq = tuple(top_seq)
    current = word
    for k, j in enumerate(target):
        corr, current = make_first(current, j, seq, e)
        corr_all += [(c, prefix + w) for c, w in corr]
        prefix = prefix + (j,)
        s = list(seq)
        s[j - 1], s[j] = s[j], s[j - 1]
        seq = tuple(s)
        current = current[1:]
    return corr_all
