"""Admissible words over the alphabet {1..n, 1^inf..n^inf, e} and their invariants.

A word records how a page is built from the first page: a finite letter ``j``
takes homology along the j-th differential, ``j^`` saturates direction j and
``e`` runs the extension process after a saturation.

Text form (n <= 9): ``12121^e2^e`` means 1,2,1,2,1^inf,e,2^inf,e.  For larger n
(or whenever a dot is present) tokens are dot separated: ``1.12^.e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

FIN = "fin"
SAT = "sat"
EXT = "ext"


class WordError(ValueError):
    """Base class for malformed or inadmissible words."""


class WordSyntaxError(WordError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


class LetterRangeError(WordError):
    pass


class InadmissibleWordError(WordError):
    def __init__(self, word: "Word", condition: int, pos: int, msg: str):
        super().__init__(
            f"word {str(word)!r} is not admissible (condition {condition}): {msg} at letter {pos}"
        )
        self.condition = condition
        self.pos = pos


@dataclass(frozen=True, order=True)
class Letter:
    kind: str
    j: int = 0  # 1-based; 0 for Extend

    def __str__(self) -> str:
        if self.kind == FIN:
            return str(self.j)
        if self.kind == SAT:
            return f"{self.j}^"
        return "e"


def finite(j: int) -> Letter:
    return Letter(FIN, j)


def saturate(j: int) -> Letter:
    return Letter(SAT, j)


EXTEND = Letter(EXT, 0)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        for i, let in enumerate(self.letters):
            if let.kind != EXT and not 1 <= let.j <= self.n:
                raise LetterRangeError(f"letter {let} at {i} out of range for n={self.n}")

    @classmethod
    def empty(cls, n: int) -> "Word":
        return cls((), n)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other) -> "Word":
        if isinstance(other, Letter):
            return Word(self.letters + (other,), self.n)
        if isinstance(other, Word):
            if other.n != self.n:
                raise ValueError("cannot concatenate words of different dimension")
            return Word(self.letters + other.letters, self.n)
        return NotImplemented

    def __str__(self) -> str:
        if self.n > 9:
            return ".".join(str(let) for let in self.letters)
        return "".join(str(let) for let in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, n={self.n})"

    def prefix(self, k: int) -> "Word":
        return Word(self.letters[:k], self.n)

    @property
    def last(self) -> Optional[Letter]:
        return self.letters[-1] if self.letters else None

    def is_pure(self) -> bool:
        """True for words in [n]^* (finite letters only)."""
        return all(let.kind == FIN for let in self.letters)


def parse_word(text: str, n: int) -> Word:
    """Parse the textual word grammar; see the module docstring."""
    text = text.strip()
    if text in ("", "ε", "eps"):
        return Word.empty(n)
    letters: list[Letter] = []
    if "." in text or n > 9:
        pos = 0
        for tok in text.split("."):
            letters.append(_parse_token(text, pos, tok, n))
            pos += len(tok) + 1
        return Word(tuple(letters), n)
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "e":
            letters.append(EXTEND)
            i += 1
        elif ch.isdigit():
            j = int(ch)
            if j == 0:
                raise WordSyntaxError(text, i, "letter 0 is not allowed")
            if j > n:
                raise LetterRangeError(f"letter {j} at position {i} exceeds n={n}")
            if i + 1 < len(text) and text[i + 1] == "^":
                letters.append(saturate(j))
                i += 2
            else:
                letters.append(finite(j))
                i += 1
        else:
            raise WordSyntaxError(text, i, f"unexpected character {ch!r}")
    return Word(tuple(letters), n)


def _parse_token(text: str, pos: int, tok: str, n: int) -> Letter:
    if tok == "e":
        return EXTEND
    sat = tok.endswith("^")
    digits = tok[:-1] if sat else tok
    if not digits.isdigit():
        raise WordSyntaxError(text, pos, f"bad token {tok!r}")
    j = int(digits)
    if j == 0:
        raise WordSyntaxError(text, pos, "letter 0 is not allowed")
    if j > n:
        raise LetterRangeError(f"letter {j} at position {pos} exceeds n={n}")
    return saturate(j) if sat else finite(j)


def admissibility_violation(w: Word) -> Optional[tuple[int, int, str]]:
    """Return (condition, letter index, message) for the first violation, or None."""
    saturated: set[int] = set()
    prev: Optional[Letter] = None
    for i, let in enumerate(w.letters):
        if prev is not None and prev.kind == SAT and let.kind != EXT:
            return 2, i, f"only e may follow {prev}"
        if let.kind == EXT:
            if prev is None or prev.kind != SAT:
                return 3, i, "e must come directly after a saturated letter"
        elif let.j in saturated:
            return 1, i, f"index {let.j} already saturated"
        if let.kind == SAT:
            saturated.add(let.j)
        prev = let
    return None


def is_admissible(w: Word) -> bool:
    return admissibility_violation(w) is None


def require_admissible(w: Word) -> Word:
    v = admissibility_violation(w)
    if v is not None:
        raise InadmissibleWordError(w, *v)
    return w


def saturated_sets(w: Word) -> tuple[frozenset[int], frozenset[int]]:
    """(X, Y): indices j with j^inf e already in w, and the rest."""
    require_admissible(w)
    return _xy(w)


def _xy(w: Word) -> tuple[frozenset[int], frozenset[int]]:
    x = set()
    for a, b in zip(w.letters, w.letters[1:]):
        if a.kind == SAT and b.kind == EXT:
            x.add(a.j)
    xs = frozenset(x)
    return xs, frozenset(range(1, w.n + 1)) - xs


def is_final(w: Word) -> bool:
    require_admissible(w)
    return len(_xy(w)[0]) == w.n


@dataclass(frozen=True)
class DifferentialData:
    """a[i] is the negated direction of the i-th differential, delta[i] its increment."""

    a: tuple[tuple[int, ...], ...]
    delta: tuple[tuple[int, ...], ...]

    def delta_matrix(self) -> np.ndarray:
        """Columns are delta^1..delta^n."""
        return np.array(self.delta, dtype=np.int64).T


@dataclass(frozen=True)
class WordState:
    a: tuple[tuple[int, ...], ...]
    delta: tuple[tuple[int, ...], ...]
    t: tuple[tuple[int, ...], ...]
    u: tuple[int, ...]
    x: frozenset[int]
    lattice_gens: tuple[tuple[int, ...], ...]


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(n))


def _vsub(x, y):
    return tuple(p - q for p, q in zip(x, y))


def _vadd(x, y):
    return tuple(p + q for p, q in zip(x, y))


def step_matrix(n: int, j: int, y: frozenset[int]) -> tuple[tuple[int, ...], ...]:
    """Identity plus e_j times the indicator row of Y \\ {j}."""
    rows = [list(_unit(n, i)) for i in range(n)]
    for k in y:
        if k != j:
            rows[j - 1][k - 1] = 1
    return tuple(tuple(r) for r in rows)


def _matmul(m, v):
    return tuple(sum(r[k] * v[k] for k in range(len(v))) for r in m)


def _matmat(m1, m2):
    n = len(m1)
    return tuple(
        tuple(sum(m1[i][k] * m2[k][c] for k in range(n)) for c in range(n)) for i in range(n)
    )


@lru_cache(maxsize=65536)
def word_state(w: Word) -> WordState:
    """All recursively defined quantities of an admissible word."""
    require_admissible(w)
    n = w.n
    if not w.letters:
        ident = tuple(_unit(n, i) for i in range(n))
        return WordState(ident, ident, ident, (0,) * n, frozenset(), ())
    prev = word_state(w.prefix(len(w) - 1))
    let = w.letters[-1]
    if let.kind == SAT:
        return prev
    if let.kind == EXT:
        sat = w.letters[-2].j
        return WordState(
            prev.a, prev.delta, prev.t, prev.u, prev.x | {sat},
            prev.lattice_gens + (prev.delta[sat - 1],),
        )
    j = let.j
    y = frozenset(range(1, n + 1)) - prev.x
    a = list(prev.a)
    a[j - 1] = _vadd(prev.a[j - 1], prev.delta[j - 1])
    delta = list(prev.delta)
    for i in range(1, n + 1):
        if i in y and i != j:
            delta[i - 1] = _vsub(prev.delta[i - 1], prev.delta[j - 1])
    step = step_matrix(n, j, y)
    t = _matmat(step, prev.t)
    u = _vadd(_unit(n, j - 1), _matmul(step, prev.u))
    return WordState(tuple(a), tuple(delta), t, u, prev.x, prev.lattice_gens)


def differential_data(w: Word) -> DifferentialData:
    st = word_state(w)
    return DifferentialData(st.a, st.delta)


def t_matrix(w: Word) -> np.ndarray:
    return np.array(word_state(w).t, dtype=np.int64)


def u_vec(w: Word) -> np.ndarray:
    """The recursively defined upper corner u; cross-checked by the closed form when possible."""
    st = word_state(w)
    u = np.array(st.u, dtype=np.int64)
    if w.n >= 2 and w.is_pure():
        num = np.array(st.t, dtype=np.int64).sum(axis=1) - 1
        if np.any(num % (w.n - 1)):
            raise ArithmeticError(f"T*1 - 1 not divisible by n-1 for {w!r}")
        if not np.array_equal(num // (w.n - 1), u):
            raise ArithmeticError(f"u recursion disagrees with closed form for {w!r}")
    return u


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style HNF of the integer span of ``rows`` (zero rows dropped)."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out_rows: list[list[int]] = []
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    out_rows = [row for row in m[:r] if any(row)]
    return tuple(tuple(row) for row in out_rows)


def lattice(w: Word) -> tuple[tuple[int, ...], ...]:
    """HNF basis of the lattice V spanned by the deltas of extended indices."""
    return hermite_normal_form(word_state(w).lattice_gens)


def reduce_mod_lattice(point: Sequence[int], basis: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical coset representative of ``point`` modulo the lattice with HNF ``basis``."""
    p = list(map(int, point))
    for row in basis:
        c = next(k for k, v in enumerate(row) if v)
        q = p[c] // row[c]
        p = [a - q * b for a, b in zip(p, row)]
    return tuple(p)


def b_region(w: Word, truncation: int = 0) -> frozenset[tuple[int, ...]]:
    """The discrete zonotope B_w; rays and lines of infinite letters are cut at ``truncation``."""
    require_admissible(w)
    pts = {(0,) * w.n}
    base = pts
    for i, let in enumerate(w.letters):
        d = word_state(w.prefix(i)).delta
        if let.kind == FIN:
            step = d[let.j - 1]
            pts = pts | {_vadd(x, step) for x in pts}
        elif let.kind == SAT:
            base = pts
            step = d[let.j - 1]
            pts = {_vadd(x, tuple(s * k for s in step)) for x in base for k in range(truncation + 1)}
        else:
            step = d[w.letters[i - 1].j - 1]
            pts = {
                _vadd(x, tuple(s * k for s in step))
                for x in base
                for k in range(-truncation, truncation + 1)
            }
    return frozenset(pts)


def normalize(w: Word) -> Word:
    """Rewrite each run j^k j^inf as j^inf."""
    require_admissible(w)
    out: list[Letter] = []
    for let in w.letters:
        if let.kind == SAT:
            while out and out[-1].kind == FIN and out[-1].j == let.j:
                out.pop()
        out.append(let)
    return Word(tuple(out), w.n)


def next_letters(w: Word) -> list[Letter]:
    """All letters c with w*c admissible, in a fixed order."""
    cands = [finite(j) for j in range(1, w.n + 1)]
    cands += [saturate(j) for j in range(1, w.n + 1)]
    cands.append(EXTEND)
    return [c for c in cands if is_admissible(w + c)]


def admissible_words(n: int, max_len: int) -> list[Word]:
    """Every admissible word of length <= max_len, shortlex ordered."""
    out = [Word.empty(n)]
    frontier = [Word.empty(n)]
    for _ in range(max_len):
        nxt = [w + c for w in frontier for c in next_letters(w)]
        out += nxt
        frontier = nxt
    return out


def pure_words(n: int, max_len: int) -> list[Word]:
    """All words in [n]^* up to the given length."""
    out = [Word.empty(n)]
    frontier = [Word.empty(n)]
    for _ in range(max_len):
        frontier = [w + finite(j) for w in frontier for j in range(1, n + 1)]
        out += frontier
    return out
