"""Multipartition, tableau and shape combinatorics.

Everything here is exact and purely combinatorial: residues, the degree
statistic, dominance orders, shapes with their classification flags,
chains of maximal subshapes, and detection of Carter-Payne pairs together
with the target tableau their homomorphism sends the generator to.

Conventions, fixed globally:
  * nodes are (component, row, col), all 1-based, ordered lexicographically;
  * partitions are stored without trailing zeros;
  * the quantum characteristic ``e`` is an int >= 2 or ``None`` for infinity;
  * residues are ints, reduced mod ``e`` when ``e`` is finite.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class Node(NamedTuple):
    component: int
    row: int
    col: int


def quantum_char(e) -> Optional[int]:
    """Validate and normalize the quantum characteristic."""
    if e is None:
        return None
    e = int(e)
    if e < 2:
        raise ValueError(f"quantum characteristic must be >= 2 or None, got {e}")
    return e


def normalize_residue(x: int, e: Optional[int]) -> int:
    return x if e is None else x % e


def normalize_multicharge(kappa: Sequence[int], e: Optional[int]) -> tuple:
    kappa = tuple(int(k) for k in kappa)
    if not kappa:
        raise ValueError("multicharge must have length >= 1")
    return tuple(normalize_residue(k, e) for k in kappa)


class Multipartition:
    """A sequence of partitions; hashable and immutable."""

    __slots__ = ("components", "n", "_hash")

    def __init__(self, components: Iterable[Iterable[int]]):
        comps = []
        for comp in components:
            comp = tuple(int(p) for p in comp if int(p) != 0)
            for a, b in zip(comp, comp[1:]):
                if a < b:
                    raise ValueError(f"rows must be weakly decreasing, got {comp}")
            if any(p < 0 for p in comp):
                raise ValueError(f"negative part in {comp}")
            comps.append(comp)
        if not comps:
            raise ValueError("need at least one component")
        self.components = tuple(comps)
        self.n = sum(sum(c) for c in comps)
        self._hash = hash(self.components)

    @property
    def level(self) -> int:
        return len(self.components)

    def row_length(self, component: int, row: int) -> int:
        comp = self.components[component - 1]
        return comp[row - 1] if 1 <= row <= len(comp) else 0

    def contains(self, node: Node) -> bool:
        return 1 <= node.component <= self.level and node.col <= self.row_length(
            node.component, node.row
        ) and node.row >= 1 and node.col >= 1

    def nodes(self) -> list:
        """All nodes in the fixed lexicographic order."""
        out = []
        for m, comp in enumerate(self.components, start=1):
            for r, length in enumerate(comp, start=1):
                for c in range(1, length + 1):
                    out.append(Node(m, r, c))
        return out

    def addable_nodes(self) -> list:
        out = []
        for m, comp in enumerate(self.components, start=1):
            rows = len(comp)
            for r in range(1, rows + 2):
                above = comp[r - 2] if r >= 2 else None
                here = comp[r - 1] if r <= rows else 0
                if r == 1 or (above is not None and above > here):
                    out.append(Node(m, r, here + 1))
        return out

    def removable_nodes(self) -> list:
        out = []
        for m, comp in enumerate(self.components, start=1):
            rows = len(comp)
            for r in range(1, rows + 1):
                below = comp[r] if r < rows else 0
                if comp[r - 1] > below:
                    out.append(Node(m, r, comp[r - 1]))
        return out

    def add(self, node: Node) -> "Multipartition":
        comps = [list(c) for c in self.components]
        comp = comps[node.component - 1]
        if node.row == len(comp) + 1:
            comp.append(1)
        else:
            comp[node.row - 1] += 1
        return Multipartition(comps)

    def remove(self, node: Node) -> "Multipartition":
        comps = [list(c) for c in self.components]
        comps[node.component - 1][node.row - 1] -= 1
        return Multipartition(comps)

    def union(self, other: "Multipartition") -> "Multipartition":
        if self.level != other.level:
            raise ValueError("level mismatch")
        comps = []
        for a, b in zip(self.components, other.components):
            rows = max(len(a), len(b))
            comps.append(
                tuple(
                    max(a[r] if r < len(a) else 0, b[r] if r < len(b) else 0)
                    for r in range(rows)
                )
            )
        return Multipartition(comps)

    def restricted_contains(self, other: "Multipartition") -> bool:
        """Rowwise containment other <= self."""
        if self.level != other.level:
            return False
        for a, b in zip(self.components, other.components):
            if len(b) > len(a):
                return False
            if any(b[r] > a[r] for r in range(len(b))):
                return False
        return True

    def to_json(self):
        return [list(c) for c in self.components]

    @staticmethod
    def from_json(data) -> "Multipartition":
        return Multipartition(data)

    def __eq__(self, other):
        return isinstance(other, Multipartition) and self.components == other.components

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Multipartition({list(self.components)})"


def residue(node: Node, e: Optional[int], kappa: Sequence[int]) -> int:
    """Residue col - row + kappa[component], reduced mod e when finite."""
    if not 1 <= node.component <= len(kappa):
        raise IndexError(f"component {node.component} outside multicharge of length {len(kappa)}")
    return normalize_residue(node.col - node.row + kappa[node.component - 1], e)


def addable_removable(lam: Multipartition, e, kappa):
    """Addable and removable nodes with residues, in node order."""
    add = [(nd, residue(nd, e, kappa)) for nd in lam.addable_nodes()]
    rem = [(nd, residue(nd, e, kappa)) for nd in lam.removable_nodes()]
    return add, rem


# ---------------------------------------------------------------------------
# standard tableaux


class StandardTableau:
    """A standard filling of a multipartition, stored row by row."""

    __slots__ = ("shape", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Iterable[int]]], check: bool = True):
        self.rows = tuple(tuple(tuple(int(v) for v in row) for row in comp) for comp in rows)
        self.shape = Multipartition([[len(row) for row in comp] for comp in self.rows])
        self._hash = hash(self.rows)
        if check and not self._is_standard():
            raise ValueError(f"not a standard tableau: {self.rows}")

    def _is_standard(self) -> bool:
        n = self.shape.n
        seen = set()
        for comp in self.rows:
            for r, row in enumerate(comp):
                for c, v in enumerate(row):
                    if not 1 <= v <= n or v in seen:
                        return False
                    seen.add(v)
                    if c > 0 and row[c - 1] >= v:
                        return False
                    if r > 0 and len(comp[r - 1]) > c and comp[r - 1][c] >= v:
                        return False
        return len(seen) == n

    @property
    def n(self) -> int:
        return self.shape.n

    def value_at(self, node: Node) -> int:
        return self.rows[node.component - 1][node.row - 1][node.col - 1]

    def node_of(self, value: int) -> Node:
        for m, comp in enumerate(self.rows, start=1):
            for r, row in enumerate(comp, start=1):
                for c, v in enumerate(row, start=1):
                    if v == value:
                        return Node(m, r, c)
        raise ValueError(f"value {value} not in tableau")

    def inverse(self) -> dict:
        """value -> node map."""
        out = {}
        for m, comp in enumerate(self.rows, start=1):
            for r, row in enumerate(comp, start=1):
                for c, v in enumerate(row, start=1):
                    out[v] = Node(m, r, c)
        return out

    def restrict(self, m: int) -> "StandardTableau":
        rows = [
            [[v for v in row if v <= m] for row in comp]
            for comp in self.rows
        ]
        rows = [[row for row in comp if row] for comp in rows]
        rows = [comp if comp else [] for comp in rows]
        return StandardTableau([comp or [] for comp in rows], check=False)

    def restricted_shape(self, m: int) -> Multipartition:
        return Multipartition(
            [[sum(1 for v in row if v <= m) for row in comp] for comp in self.rows]
        )

    def residue_sequence(self, e, kappa) -> tuple:
        inv = self.inverse()
        return tuple(residue(inv[k], e, kappa) for k in range(1, self.n + 1))

    def row_reading_word(self) -> tuple:
        out = []
        for comp in self.rows:
            for row in comp:
                out.extend(row)
        return tuple(out)

    def apply_value_permutation(self, mapping: dict) -> "StandardTableau":
        """Relabel entries by value -> value mapping; result may need checking."""
        rows = [
            [[mapping.get(v, v) for v in row] for row in comp]
            for comp in self.rows
        ]
        return StandardTableau(rows, check=False)

    def to_json(self):
        entries = []
        for m, comp in enumerate(self.rows, start=1):
            for r, row in enumerate(comp, start=1):
                for c, v in enumerate(row, start=1):
                    entries.append([[m, r, c], v])
        return {"shape": self.shape.to_json(), "entries": entries}

    @staticmethod
    def from_json(data) -> "StandardTableau":
        shape = Multipartition.from_json(data["shape"])
        rows = [[[0] * length for length in comp] for comp in shape.components]
        for (m, r, c), v in data["entries"]:
            rows[m - 1][r - 1][c - 1] = v
        return StandardTableau(rows)

    def __eq__(self, other):
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"StandardTableau({self.rows})"


def initial_tableau(lam: Multipartition) -> StandardTableau:
    """The maximal tableau filling nodes 1..n in node order."""
    rows = []
    k = 0
    for comp in lam.components:
        crow = []
        for length in comp:
            crow.append(list(range(k + 1, k + length + 1)))
            k += length
        rows.append(crow)
    return StandardTableau(rows, check=False)


def node_degree(lam: Multipartition, node: Node, e, kappa) -> int:
    """d_N: addable minus removable i-nodes strictly greater than N."""
    i = residue(node, e, kappa)
    add, rem = addable_removable(lam, e, kappa)
    up = sum(1 for nd, res in add if res == i and nd > node)
    down = sum(1 for nd, res in rem if res == i and nd > node)
    return up - down


def degree(t: StandardTableau, e, kappa) -> int:
    """The recursive degree statistic of a standard tableau."""
    inv = t.inverse()
    lam = t.shape
    total = 0
    for k in range(t.n, 0, -1):
        node = inv[k]
        total += node_degree(lam, node, e, kappa)
        lam = lam.remove(node)
    return total


# ---------------------------------------------------------------------------
# dominance orders

LESS = "less"
GREATER = "greater"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


def _partial_sums(x: Multipartition) -> list:
    """Cumulative node counts indexed by (component, row) prefixes."""
    sums = []
    total = 0
    for comp in x.components:
        for part in comp:
            total += part
            sums.append(total)
        sums.append(total)  # sentinel so shorter components still compare
    return sums


def _dominates(x: Multipartition, y: Multipartition) -> bool:
    """True iff x dominates y (x >= y), via the partial-sum condition."""
    before_x = 0
    before_y = 0
    for cx, cy in zip(x.components, y.components):
        rows = max(len(cx), len(cy))
        sx, sy = before_x, before_y
        for r in range(rows):
            sx += cx[r] if r < len(cx) else 0
            sy += cy[r] if r < len(cy) else 0
            if sx < sy:
                return False
        before_x = sx
        before_y = sy
    return True


def dominance(x: Multipartition, y: Multipartition) -> str:
    """Compare in dominance order; raises on size or level mismatch."""
    if x.level != y.level:
        raise ValueError("level mismatch")
    if x.n != y.n:
        raise ValueError("size mismatch")
    if x == y:
        return EQUAL
    xy = _dominates(x, y)
    yx = _dominates(y, x)
    if xy and not yx:
        return GREATER
    if yx and not xy:
        return LESS
    return INCOMPARABLE


def tableau_dominance(s: StandardTableau, t: StandardTableau) -> str:
    """Dominance on same-shape standard tableaux via all restrictions."""
    if s.shape != t.shape:
        raise ValueError("shape mismatch")
    if s == t:
        return EQUAL
    ge = True
    le = True
    for m in range(1, s.n + 1):
        cmp = dominance(s.restricted_shape(m), t.restricted_shape(m))
        if cmp == GREATER:
            le = False
        elif cmp == LESS:
            ge = False
        elif cmp == INCOMPARABLE:
            ge = le = False
        if not ge and not le:
            return INCOMPARABLE
    if ge and not le:
        return GREATER
    if le and not ge:
        return LESS
    return INCOMPARABLE


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class ShapeFlags:
    straight: bool
    skew: bool
    removable: bool
    e_small: bool


def _is_connected(nodes: frozenset) -> bool:
    if not nodes:
        return False
    nodes = set(nodes)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        m, r, c = stack.pop()
        for nb in (Node(m, r + 1, c), Node(m, r - 1, c), Node(m, r, c + 1), Node(m, r, c - 1)):
            if nb in nodes and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(nodes)


def shape_rows(nodes: Iterable[Node]):
    """Group a one-component node set by row: {row: (min_col, max_col)}; checks contiguity."""
    rows = {}
    for nd in nodes:
        rows.setdefault(nd.row, []).append(nd.col)
    out = {}
    for r, cols in rows.items():
        cols.sort()
        if cols != list(range(cols[0], cols[-1] + 1)):
            return None
        out[r] = (cols[0], cols[-1])
    return out


def is_straight(nodes: Iterable[Node]) -> bool:
    """True iff the nodes form a translated partition diagram in one component."""
    nodes = list(nodes)
    if not nodes:
        return False
    if len({nd.component for nd in nodes}) != 1:
        return False
    rows = shape_rows(nodes)
    if rows is None:
        return False
    rlist = sorted(rows)
    if rlist != list(range(rlist[0], rlist[-1] + 1)):
        return False
    left = [rows[r][0] for r in rlist]
    if len(set(left)) != 1:
        return False
    lengths = [rows[r][1] - rows[r][0] + 1 for r in rlist]
    return all(a >= b for a, b in zip(lengths, lengths[1:]))


def is_skew(nodes: Iterable[Node]) -> bool:
    """True iff the nodes form a translated skew diagram in one component."""
    nodes = list(nodes)
    if not nodes or len({nd.component for nd in nodes}) != 1:
        return False
    rows = shape_rows(nodes)
    if rows is None:
        return False
    rlist = sorted(rows)
    if rlist != list(range(rlist[0], rlist[-1] + 1)):
        return False
    lefts = [rows[r][0] for r in rlist]
    rights = [rows[r][1] for r in rlist]
    return all(a >= b for a, b in zip(lefts, lefts[1:])) and all(
        a >= b for a, b in zip(rights, rights[1:])
    )


def is_removable_shape(nodes: Iterable[Node], context: Multipartition) -> bool:
    """True iff the node set can be peeled from the context by removable nodes."""
    remaining = set(nodes)
    current = context
    for nd in remaining:
        if not context.contains(nd):
            return False
    progress = True
    while remaining and progress:
        progress = False
        for nd in list(remaining):
            if nd in current.removable_nodes():
                current = current.remove(nd)
                remaining.discard(nd)
                progress = True
    return not remaining


def is_e_small(nodes: Iterable[Node], e, kappa) -> bool:
    if e is None:
        return True
    residues = {residue(nd, e, kappa) for nd in nodes}
    return len(residues) < e


def shape_classify(nodes: Iterable[Node], context: Multipartition, e, kappa) -> ShapeFlags:
    """Classification flags of a shape inside a context diagram."""
    nodes = frozenset(nodes)
    if not _is_connected(nodes):
        raise ValueError("shape is not orthogonally connected")
    return ShapeFlags(
        straight=is_straight(nodes),
        skew=is_skew(nodes),
        removable=is_removable_shape(nodes, context),
        e_small=is_e_small(nodes, e, kappa),
    )


def underlying_partition(nodes: Iterable[Node]) -> tuple:
    """The partition a straight shape translates; raises if not straight."""
    if not is_straight(nodes):
        raise ValueError("shape is not straight")
    rows = shape_rows(nodes)
    return tuple(rows[r][1] - rows[r][0] + 1 for r in sorted(rows))


def top_left_node(nodes: Iterable[Node]) -> Node:
    rows = shape_rows(list(nodes))
    r = min(rows)
    return Node(next(iter(nodes)).component, r, rows[r][0])


def is_subshape(xi: Iterable[Node], rho: Iterable[Node], e, kappa) -> bool:
    """Rowwise containment of straight shapes with matching top-left residue."""
    pxi = underlying_partition(xi)
    prho = underlying_partition(rho)
    if len(pxi) > len(prho) or any(a > b for a, b in zip(pxi, prho)):
        return False
    return residue(top_left_node(xi), e, kappa) == residue(top_left_node(rho), e, kappa)


def shapes_congruent(s1: Iterable[Node], s2: Iterable[Node], e, kappa) -> bool:
    """Node sets related by a single translation with matching residues."""
    s1, s2 = list(s1), list(s2)
    if len(s1) != len(s2) or not s1:
        return False
    if len({nd.component for nd in s1}) != 1 or len({nd.component for nd in s2}) != 1:
        return False
    r1 = min(nd.row for nd in s1)
    c1 = min(nd.col for nd in s1)
    r2 = min(nd.row for nd in s2)
    c2 = min(nd.col for nd in s2)
    norm1 = {(nd.row - r1, nd.col - c1) for nd in s1}
    norm2 = {(nd.row - r2, nd.col - c2) for nd in s2}
    if norm1 != norm2:
        return False
    a = next(nd for nd in s1 if (nd.row - r1, nd.col - c1) == min(norm1))
    b = next(nd for nd in s2 if (nd.row - r2, nd.col - c2) == min(norm2))
    return residue(a, e, kappa) == residue(b, e, kappa)


def rank(nodes: Iterable[Node]) -> int:
    """Number of nodes on the main diagonal of a straight shape."""
    part = underlying_partition(nodes)
    return sum(1 for i, p in enumerate(part) if p > i)


def hooks_and_rim_hooks(nodes: Iterable[Node]):
    """All hooks (keyed by corner node) and all rim hooks of a straight shape.

    Hooks are the Gamma-shaped arm plus leg strips; rim hooks are the
    removable border strips with at most one node per diagonal.
    """
    part = underlying_partition(nodes)
    tl = top_left_node(list(nodes))
    m, r0, c0 = tl.component, tl.row, tl.col

    def cell(r, c):  # 1-based within the partition
        return Node(m, r0 + r - 1, c0 + c - 1)

    cols = [sum(1 for p in part if p >= c + 1) for c in range(part[0])]
    hooks = {}
    for r in range(1, len(part) + 1):
        for c in range(1, part[r - 1] + 1):
            arm = [cell(r, cc) for cc in range(c, part[r - 1] + 1)]
            leg = [cell(rr, c) for rr in range(r + 1, cols[c - 1] + 1)]
            hooks[cell(r, c)] = frozenset(arm + leg)

    rim_hooks = []
    # a rim hook is determined by its start on the rim and its length
    rim = []
    for r in range(len(part), 0, -1):
        row_len = part[r - 1]
        below = part[r] if r < len(part) else 0
        for c in range(below + 1, row_len + 1):
            rim.append((r, c))
        if r > 1:
            rim.append((r - 1, row_len))
    # dedupe while preserving the walk order along the rim (bottom-left to top-right)
    walk = []
    for rc in rim:
        if rc not in walk:
            walk.append(rc)
    for i in range(len(walk)):
        for j in range(i, len(walk)):
            strip = walk[i : j + 1]
            strip_nodes = frozenset(cell(r, c) for r, c in strip)
            diag = [c - r for r, c in strip]
            if len(set(diag)) != len(diag):
                continue
            if not _is_connected(strip_nodes):
                continue
            # removable within the straight shape itself
            inner = frozenset(cell(r, c) for r in range(1, len(part) + 1)
                              for c in range(1, part[r - 1] + 1))
            keep = inner - strip_nodes
            rel = [(nd.row - r0 + 1, nd.col - c0 + 1) for nd in keep]
            row_counts = {}
            for r, c in rel:
                row_counts[r] = max(row_counts.get(r, 0), c)
            ok = True
            for r, c in rel:
                if any((r, cc) not in rel for cc in range(1, c)):
                    ok = False
                    break
            lengths = [row_counts.get(r, 0) for r in range(1, len(part) + 1)]
            if ok and all(a >= b for a, b in zip(lengths, lengths[1:])):
                rim_hooks.append(strip_nodes)
    return hooks, rim_hooks


# ---------------------------------------------------------------------------
# Carter-Payne pairs


@dataclass(frozen=True)
class CpPair:
    lam: Multipartition
    mu: Multipartition
    nu: Multipartition
    mu_star: tuple
    lambda_star: tuple
    chain: tuple  # shapes xi^0 .. xi^c as sorted node tuples
    a: int
    b: int
    d: int
    c: int
    degree: int
    e: Optional[int] = None
    kappa: tuple = ()


@dataclass(frozen=True)
class NotAPair:
    reason: str


def _max_node(nodes) -> Node:
    return max(nodes)


def maximal_shape_chain(nu: Multipartition, lam: Multipartition, mu: Multipartition, e, kappa):
    """The chain mu* = xi^0 < ... < xi^c = lambda* of maximal removable
    e-small straight subshapes of mu* lying between the two endpoints."""
    mu_star = tuple(sorted(set(nu.nodes()) - set(lam.nodes())))
    lambda_star = tuple(sorted(set(nu.nodes()) - set(mu.nodes())))
    lo = _max_node(mu_star)
    hi = min(lambda_star)
    candidates = []
    for shape in _enumerate_straight_removable_shapes(nu):
        if not is_subshape(shape, mu_star, e, kappa):
            continue
        if not is_e_small(shape, e, kappa):
            continue
        nodes = tuple(sorted(shape))
        if nodes == mu_star or nodes == lambda_star:
            continue
        if min(nodes) > lo and max(nodes) < hi:
            candidates.append(nodes)
    # keep only set-containment-maximal candidates
    maximal = [
        s for s in candidates
        if not any(set(s) < set(t) for t in candidates if t != s)
    ]
    maximal.sort(key=lambda s: s[0])
    for s, t in zip(maximal, maximal[1:]):
        if not max(s) < min(t):
            raise ValueError("intermediate shapes are not totally ordered")
    return [mu_star] + maximal + [lambda_star]


def _enumerate_straight_removable_shapes(nu: Multipartition):
    """All removable straight shapes inside nu."""
    out = []
    for m, comp in enumerate(nu.components, start=1):
        nrows = len(comp)
        for r0 in range(1, nrows + 1):
            for depth in range(1, nrows - r0 + 2):
                # rows r0 .. r0+depth-1, all starting at column c0
                max_c0 = comp[r0 + depth - 2]
                for c0 in range(1, max_c0 + 1):
                    # lengths determined by removability: each used row must be cut
                    # at a weakly decreasing boundary ending at the row end
                    lengths_max = [comp[r0 + i - 2] - c0 + 1 for i in range(1, depth + 1)]
                    if any(l <= 0 for l in lengths_max):
                        continue
                    for shape_part in _partitions_within(lengths_max):
                        nodes = frozenset(
                            Node(m, r0 + i, c0 + j)
                            for i, ln in enumerate(shape_part)
                            for j in range(ln)
                        )
                        if is_removable_shape(nodes, nu) and is_straight(nodes):
                            out.append(nodes)
    seen = set()
    uniq = []
    for s in out:
        if s not in seen:
            seen.add(s)
            uniq.append(s)
    return uniq


def _partitions_within(bounds):
    """Weakly decreasing positive tuples (l_1 >= ... >= l_k), l_i <= bounds[i], all rows used."""
    def rec(i, prev):
        if i == len(bounds):
            yield ()
            return
        for l in range(1, min(prev, bounds[i]) + 1):
            for rest in rec(i + 1, l):
                yield (l,) + rest
    yield from rec(0, 10 ** 9)


_CP_CHECKS = ("sizes", "dominance", "union", "congruence", "removability",
              "straightness", "e-smallness")


def detect_cp_pair(lam: Multipartition, mu: Multipartition, e, kappa):
    """Check the Carter-Payne hypotheses and build the pair data, or say why not."""
    e = quantum_char(e)
    kappa = normalize_multicharge(kappa, e)
    if lam.level != mu.level or lam.n != mu.n:
        return NotAPair("sizes: |lambda| = |mu| with equal level required")
    if dominance(mu, lam) != GREATER:
        return NotAPair("dominance: mu must strictly dominate lambda")
    nu = lam.union(mu)
    mu_star = sorted(set(nu.nodes()) - set(lam.nodes()))
    lambda_star = sorted(set(nu.nodes()) - set(mu.nodes()))
    if not mu_star or not lambda_star:
        return NotAPair("union: removed shapes are empty")
    if not shapes_congruent(mu_star, lambda_star, e, kappa):
        if not (is_straight(mu_star) and is_straight(lambda_star)):
            return NotAPair("straightness: removed shapes must be straight")
        return NotAPair("congruence: removed shapes must be congruent")
    if not (is_removable_shape(mu_star, nu) and is_removable_shape(lambda_star, nu)):
        return NotAPair("removability: removed shapes must be removable")
    if not (is_straight(mu_star) and is_straight(lambda_star)):
        return NotAPair("straightness: removed shapes must be straight")
    if not (is_e_small(mu_star, e, kappa) and is_e_small(lambda_star, e, kappa)):
        return NotAPair("e-smallness: removed shapes must be e-small")

    chain = maximal_shape_chain(nu, lam, mu, e, kappa)
    c = len(chain) - 1
    d = sum(rank(xi) for xi in chain[1:])

    lo = max(mu_star)
    hi = max(lambda_star)
    mu_counts = {}
    for nd in mu_star:
        res = residue(nd, e, kappa)
        mu_counts[res] = mu_counts.get(res, 0) + 1
    add, rem = addable_removable(nu, e, kappa)
    a = sum(mu_counts.get(res, 0) for nd, res in add if lo < nd <= hi)
    b = sum(mu_counts.get(res, 0) for nd, res in rem if lo < nd <= hi)

    return CpPair(
        lam=lam, mu=mu, nu=nu,
        mu_star=tuple(mu_star), lambda_star=tuple(lambda_star),
        chain=tuple(tuple(s) for s in chain),
        a=a, b=b, d=d, c=c, degree=a - b + 2 * d,
        e=e, kappa=kappa,
    )


def over_tableau(pair: CpPair) -> StandardTableau:
    """t_lambda^nu: the maximal standard nu-tableau restricting to t^lambda."""
    lam, nu = pair.lam, pair.nu
    t = initial_tableau(lam)
    rows = [[list(row) for row in comp] for comp in t.rows]
    while len(rows) < nu.level:
        rows.append([])
    k = lam.n
    for nd in sorted(pair.mu_star):
        comp = rows[nd.component - 1]
        while len(comp) < nd.row:
            comp.append([])
        row = comp[nd.row - 1]
        while len(row) < nd.col:
            row.append(0)
        k += 1
        row[nd.col - 1] = k
    return StandardTableau(rows)


def _shape_embedded_in(mu_star, partition) -> list:
    """Nodes of mu_star realizing the given sub-partition from its top-left corner."""
    tl = top_left_node(list(mu_star))
    return [
        Node(tl.component, tl.row + r, tl.col + c)
        for r, ln in enumerate(partition)
        for c in range(ln)
    ]


def target_tableau(pair: CpPair) -> StandardTableau:
    """The tableau whose basis vector is the image of the Specht generator."""
    t0 = over_tableau(pair)
    t = t0
    for xi in pair.chain[1:]:
        xi_nodes = sorted(xi)
        part = underlying_partition(xi_nodes)
        source = _shape_embedded_in(pair.mu_star, part)
        # the swap permutation is defined by the values in t_lambda^nu
        vals_xi = sorted(t0.value_at(nd) for nd in xi_nodes)
        vals_src = sorted(t0.value_at(nd) for nd in source)
        mapping = {}
        for a, b in zip(vals_xi, vals_src):
            mapping[a] = b
            mapping[b] = a
        t = t.apply_value_permutation(mapping)
    t = t.restrict(pair.lam.n)
    if not t._is_standard() or t.shape != pair.mu:
        raise AssertionError("target tableau construction failed")
    return t


# ---------------------------------------------------------------------------
# enumeration


def std_tableaux(
    lam: Multipartition,
    e=None,
    kappa=None,
    residue_seq: Optional[Sequence[int]] = None,
    deg: Optional[int] = None,
) -> list:
    """All standard tableaux of a shape, optionally filtered by residue
    sequence and degree, sorted by row-reading word."""
    if residue_seq is not None and kappa is None:
        raise ValueError("residue filtering needs e and kappa")
    n = lam.n
    results = []

    def rec(current: Multipartition, placed: dict, k: int):
        if k > n:
            rows = [
                [
                    [placed[Node(m, r, c)] for c in range(1, length + 1)]
                    for r, length in enumerate(comp, start=1)
                ]
                for m, comp in enumerate(lam.components, start=1)
            ]
            results.append(StandardTableau(rows, check=False))
            return
        for nd in current.addable_nodes():
            if not lam.contains(nd):
                continue
            if residue_seq is not None and residue(nd, e, kappa) != residue_seq[k - 1]:
                continue
            placed[nd] = k
            rec(current.add(nd), placed, k + 1)
            del placed[nd]

    empty = Multipartition([[] for _ in lam.components])
    rec(empty, {}, 1)
    if deg is not None:
        results = [t for t in results if degree(t, e, kappa) == deg]
    results.sort(key=lambda t: t.row_reading_word())
    return results
