"""Generalized partitions and compositions with parts in N ∪ {inf}.

A generalized partition is a non-increasing tuple of positive weights, each a
natural number or infinity.  A generalized composition is a finite label set
with a positive weight attached to every label.  Two orders are provided:
``leq`` (decrease or remove parts) and ``preceq`` (combine, then decrease or
remove parts), together with the filling criterion equivalent to ``preceq``,
minimal excluded antichains, and the truncation/saturation operators used by
the equation synthesis.

All values are immutable and every function here is pure.
"""

import itertools
from functools import lru_cache

INF = float("inf")


def is_inf(w) -> bool:
    return w == INF


def ext_sum(weights):
    """Sum in N ∪ {inf}; any infinite summand makes the sum infinite."""
    total = 0
    for w in weights:
        if is_inf(w):
            return INF
        total += w
    return total


def format_weight(w) -> str:
    return "inf" if is_inf(w) else str(w)


def parse_weight(token: str):
    token = token.strip()
    if token == "inf":
        return INF
    if not token.isdigit():
        raise ValueError(f"bad weight token {token!r} (expected a natural number or 'inf')")
    return int(token)


def _check_weight(w, allow_zero=False):
    if is_inf(w):
        return w
    if isinstance(w, bool) or not isinstance(w, int):
        raise ValueError(f"weight must be a natural number or INF, got {w!r}")
    if w < 0 or (w == 0 and not allow_zero):
        raise ValueError(f"weight must be positive, got {w!r}")
    return w


class GenPartition:
    """Non-increasing tuple of weights in N ∪ {inf}; zeros are dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        cleaned = sorted((_check_weight(p, allow_zero=True) for p in parts), reverse=True)
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        object.__setattr__(self, "parts", tuple(cleaned))

    @classmethod
    def parse(cls, text: str) -> "GenPartition":
        text = text.strip()
        if text in ("", "0", "()"):
            return cls()
        return cls(parse_weight(tok) for tok in text.split(","))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def num_infinite(self) -> int:
        return sum(1 for p in self.parts if is_inf(p))

    @property
    def finite_weight(self) -> int:
        """Sum of the finite parts."""
        return sum(p for p in self.parts if not is_inf(p))

    @property
    def is_infinite(self) -> bool:
        return self.length > 0 and is_inf(self.parts[0])

    @property
    def is_finite(self) -> bool:
        return not self.is_infinite

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, GenPartition) and self.parts == other.parts

    def __lt__(self, other):
        return self.parts < other.parts

    def __le__(self, other):
        return self.parts <= other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self):
        return ",".join(format_weight(p) for p in self.parts)

    def __repr__(self):
        return f"GenPartition({self.parts!r})"

    def __setattr__(self, name, value):
        raise AttributeError("GenPartition is immutable")


def canonicalize(parts) -> GenPartition:
    """Normal form: sort non-increasing and drop zero parts."""
    return GenPartition(parts)


class GenComposition:
    """Finite label set with a positive weight in N ∪ {inf} per label.

    Labels are integers; sorting them fixes the coordinate order of any
    point tuple living over the composition.
    """

    __slots__ = ("labels", "_weights")

    def __init__(self, weights: dict):
        if not all(isinstance(k, int) for k in weights):
            raise ValueError("labels must be integers")
        w = {k: _check_weight(v) for k, v in weights.items()}
        object.__setattr__(self, "labels", tuple(sorted(w)))
        object.__setattr__(self, "_weights", w)

    @classmethod
    def from_weights(cls, seq) -> "GenComposition":
        """Composition on labels 1..r with the given weights, in order."""
        return cls({i + 1: w for i, w in enumerate(seq)})

    @classmethod
    def from_partition(cls, p: GenPartition) -> "GenComposition":
        return cls.from_weights(p.parts)

    def weight(self, label):
        return self._weights[label]

    def items(self):
        return [(k, self._weights[k]) for k in self.labels]

    @property
    def length(self) -> int:
        return len(self.labels)

    @property
    def total(self):
        return ext_sum(self._weights.values())

    @property
    def is_infinite(self) -> bool:
        return any(is_inf(w) for w in self._weights.values())

    @property
    def finite_weight(self) -> int:
        return sum(w for w in self._weights.values() if not is_inf(w))

    def shape(self) -> GenPartition:
        return GenPartition(self._weights.values())

    def __eq__(self, other):
        return isinstance(other, GenComposition) and self._weights == other._weights

    def __hash__(self):
        return hash(tuple((k, self._weights[k]) for k in self.labels))

    def __repr__(self):
        inner = ", ".join(f"{k}: {format_weight(w)}" for k, w in self.items())
        return f"GenComposition({{{inner}}})"

    def __setattr__(self, name, value):
        raise AttributeError("GenComposition is immutable")


class Tableau:
    """Rows of globally distinct integer labels, row lengths non-increasing."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        labels = [x for row in rows for x in row]
        if len(set(labels)) != len(labels):
            raise ValueError("tableau labels must be globally distinct")
        if any(not isinstance(x, int) or x < 1 for x in labels):
            raise ValueError("tableau labels must be positive integers")
        lengths = [len(r) for r in rows]
        if any(lengths[i] < lengths[i + 1] for i in range(len(lengths) - 1)):
            raise ValueError("row lengths must be non-increasing")
        if any(n == 0 for n in lengths):
            raise ValueError("empty rows are not allowed")
        object.__setattr__(self, "rows", rows)

    def shape(self) -> GenPartition:
        return GenPartition(len(r) for r in self.rows)

    def labels(self):
        return [x for row in self.rows for x in row]

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Tableau({self.rows!r})"

    def __setattr__(self, name, value):
        raise AttributeError("Tableau is immutable")


def row_major_tableau(shape: GenPartition) -> Tableau:
    """Rows filled with consecutive integers: row 1 gets 1..shape[0], etc."""
    if shape.is_infinite:
        raise ValueError("row-major tableau requires a finite shape")
    rows, nxt = [], 1
    for size in shape:
        rows.append(tuple(range(nxt, nxt + size)))
        nxt += size
    return Tableau(rows)


def leq(mu: GenPartition, lam: GenPartition) -> bool:
    """mu obtained from lam by decreasing or removing parts."""
    if mu.length > lam.length:
        return False
    return all(mu[i] <= lam[i] for i in range(mu.length))


def _minimal_cover_groups(target, parts, mask):
    """Index subsets of `mask` with ext-sum >= target and no sufficient proper prefix.

    Every sufficient group contains one of these, so searching over them is
    complete for the combining order.
    """
    if is_inf(target):
        for i in range(len(parts)):
            if (mask >> i) & 1 and is_inf(parts[i]):
                yield 1 << i
        return
    avail = [i for i in range(len(parts)) if (mask >> i) & 1]

    def rec(pos, acc_mask, acc_sum):
        for idx in range(pos, len(avail)):
            i = avail[idx]
            s = INF if is_inf(parts[i]) else acc_sum + parts[i]
            m = acc_mask | (1 << i)
            if s >= target:
                yield m
            else:
                yield from rec(idx + 1, m, s)

    yield from rec(0, 0, 0)


def preceq(mu: GenPartition, lam: GenPartition) -> bool:
    """mu obtained from lam by combining and decreasing (or removing) parts.

    Decided by backtracking over disjoint groups of lam's parts, one group
    per part of mu, each group ext-summing to at least the mu part.
    """
    if mu.length == 0:
        return True
    if mu.length > lam.length or mu.num_infinite > lam.num_infinite:
        return False
    mu_parts, lam_parts = mu.parts, lam.parts

    @lru_cache(maxsize=None)
    def solve(j, mask):
        if j == len(mu_parts):
            return True
        for g in _minimal_cover_groups(mu_parts[j], lam_parts, mask):
            if solve(j + 1, mask & ~g):
                return True
        return False

    return solve(0, (1 << lam.length) - 1)


def good_filling_exists(mu: GenPartition, lam: GenPartition) -> bool:
    """Is there a tableau of shape mu, entries i used at most lam_i times in
    total and confined to a single row each?

    Independent route to the combining order: decided by explicit filling
    search rather than by grouping.
    """
    if mu.length == 0:
        return True
    caps = list(lam.parts)
    inf_entries = [i for i, c in enumerate(caps) if is_inf(c)]
    inf_rows = mu.num_infinite
    if inf_rows > len(inf_entries):
        return False
    # An infinite row needs a dedicated infinite-capacity entry.  Entries of
    # equal capacity are interchangeable, so anchoring the first ones is no
    # loss of generality.
    owned = set(inf_entries[:inf_rows])
    finite_rows = [p for p in mu.parts if not is_inf(p)]
    residual = {i: caps[i] for i in range(len(caps))}

    def fill_rows(r):
        if r == len(finite_rows):
            return True
        size = finite_rows[r]
        row_used = []

        def fill_cells(pos, min_entry):
            if pos == size:
                owned.update(row_used)
                ok = fill_rows(r + 1)
                owned.difference_update(row_used)
                return ok
            # non-decreasing entries within the row avoid permuted duplicates
            for e in range(min_entry, len(caps)):
                if e in owned:
                    continue
                cap = residual[e]
                if not is_inf(cap) and cap < 1:
                    continue
                if not is_inf(cap):
                    residual[e] = cap - 1
                added = e not in row_used
                if added:
                    row_used.append(e)
                ok = fill_cells(pos + 1, e)
                if not is_inf(cap):
                    residual[e] = cap
                if added:
                    row_used.pop()
                if ok:
                    return True
            return False

        return fill_cells(0, 0)

    return fill_rows(0)


def finite_partitions_in_box(max_length: int, max_part: int):
    """All non-empty finite partitions with at most max_length parts, each
    at most max_part, in increasing tuple order."""
    out = []

    def rec(prefix, largest, slots):
        for p in range(1, largest + 1):
            cur = prefix + (p,)
            out.append(GenPartition(cur))
            if slots > 1:
                rec(cur, p, slots - 1)

    if max_length >= 1 and max_part >= 1:
        rec((), max_part, max_length)
    return sorted(out, key=lambda q: q.parts)


def min_excluded(lam: GenPartition) -> list:
    """Minimal finite partitions, for the combining order, that are not below
    lam.  Searched over the box of partitions with at most length(lam)+1
    parts, each part at most finite_weight(lam)+1."""
    if not lam.is_infinite:
        raise ValueError("min_excluded requires a partition with an infinite part")
    box = finite_partitions_in_box(lam.length + 1, lam.finite_weight + 1)
    excluded = [a for a in box if not preceq(a, lam)]
    minimal = [
        a
        for a in excluded
        if not any(b != a and preceq(b, a) for b in excluded)
    ]
    return sorted(minimal, key=lambda q: q.parts)


def mu_minus(mu: GenPartition, e: int) -> GenPartition:
    """Cap every part larger than e+1 at e+1."""
    return GenPartition(min(p, e + 1) for p in mu.parts)


def mu_s(mu: GenPartition, e: int) -> GenPartition:
    """Saturate: parts equal to e+1 become infinite.  The result is the
    largest partition with the same (e+1)-capped truncation as mu."""
    for p in mu.parts:
        if not is_inf(p) and p > e + 1:
            raise ValueError(f"part {p} exceeds e+1 = {e + 1}")
    return GenPartition(INF if p == e + 1 else p for p in mu.parts)


def lambda_minus_set(lam: GenPartition) -> list:
    """All (e+1)-capped truncations of partitions below lam in the
    decrease-or-remove order, with e = finite_weight(lam).  The empty
    partition is excluded."""
    if not lam.is_infinite:
        raise ValueError("lambda_minus_set requires a partition with an infinite part")
    e = lam.finite_weight
    ranges = [range(0, (e + 1 if is_inf(p) else min(p, e + 1)) + 1) for p in lam.parts]
    seen = set()
    for vec in itertools.product(*ranges):
        q = GenPartition(vec)
        if q.length:
            seen.add(q)
    return sorted(seen, key=lambda q: q.parts)


def aut(lam: GenComposition) -> list:
    """All weight-preserving bijections of the label set, as dicts.

    The group is the product of symmetric groups on blocks of equal weight.
    """
    blocks = {}
    for k in lam.labels:
        blocks.setdefault(lam.weight(k), []).append(k)
    block_lists = [blocks[w] for w in sorted(blocks, reverse=True)]
    perms = []
    for images in itertools.product(*(itertools.permutations(b) for b in block_lists)):
        table = {}
        for block, image in zip(block_lists, images):
            table.update(dict(zip(block, image)))
        perms.append(table)
    perms.sort(key=lambda t: tuple(t[k] for k in lam.labels))
    return perms
