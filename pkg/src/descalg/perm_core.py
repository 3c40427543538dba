"""Plain, signed and colored permutations together with their descent statistics.

Elements are immutable dataclasses wrapping a tuple ``word`` in one-line
notation.  Colored letters are ``(value, color)`` pairs and compare in the
lexicographic order on ``(color, value)``, so ``0_1`` sits above every
letter of color 0 and below every other letter.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence


class InvalidInput(ValueError):
    """Raised for malformed elements, mismatched groups or bad statistic names."""


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured size limit."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what} has {size} elements, budget is {budget}")
        self.size = size
        self.budget = budget


DEFAULT_BUDGET = 10**6


# ---------------------------------------------------------------------------
# element types


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.word) != list(range(1, len(self.word) + 1)):
            raise InvalidInput(f"not a permutation: {self.word}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True, order=True)
class SignedPermutation:
    word: tuple[int, ...]

    def __post_init__(self):
        if sorted(abs(v) for v in self.word) != list(range(1, len(self.word) + 1)):
            raise InvalidInput(f"not a signed permutation: {self.word}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        if i < 0:
            return -self.word[-i - 1]
        return self.word[i - 1]

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class ColoredPermutation:
    r: int
    word: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.r < 1:
            raise InvalidInput("color modulus must be at least 1")
        if sorted(v for v, _ in self.word) != list(range(1, len(self.word) + 1)):
            raise InvalidInput(f"not a colored permutation: {self.word}")
        if any(not 0 <= c < self.r for _, c in self.word):
            raise InvalidInput(f"color out of range for r={self.r}: {self.word}")

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def codes(self) -> tuple[int, ...]:
        return tuple(v * self.r + c for v, c in self.word)

    def __call__(self, i: int) -> tuple[int, int]:
        if i == self.n + 1:
            return (0, 1)
        return self.word[i - 1]

    def __lt__(self, other: "ColoredPermutation") -> bool:
        return (self.r, self.codes) < (other.r, other.codes)

    def __str__(self) -> str:
        return format_element(self)


Element = Permutation | SignedPermutation | ColoredPermutation


@dataclass(frozen=True)
class GroupDescriptor:
    """One of ``symmetric(n)``, ``hyperoctahedral(n)`` or ``colored(r, n)``."""

    family: str
    n: int
    r: int = 1

    def __post_init__(self):
        if self.family not in ("symmetric", "hyperoctahedral", "colored"):
            raise InvalidInput(f"unknown family {self.family!r}")
        if self.n < 0 or self.r < 1:
            raise InvalidInput("need n >= 0 and r >= 1")
        if self.family == "symmetric" and self.r != 1:
            raise InvalidInput("symmetric groups have r = 1")
        if self.family == "hyperoctahedral" and self.r != 2:
            raise InvalidInput("hyperoctahedral groups have r = 2")

    @classmethod
    def symmetric(cls, n: int) -> "GroupDescriptor":
        return cls("symmetric", n, 1)

    @classmethod
    def hyperoctahedral(cls, n: int) -> "GroupDescriptor":
        return cls("hyperoctahedral", n, 2)

    @classmethod
    def colored(cls, r: int, n: int) -> "GroupDescriptor":
        return cls("colored", n, r)

    @classmethod
    def parse(cls, text: str) -> "GroupDescriptor":
        """Parse ``symmetric:4``, ``hyperoctahedral:3`` or ``colored:3,2`` (r, n)."""
        aliases = {"S": "symmetric", "B": "hyperoctahedral", "G": "colored"}
        try:
            family, _, args = text.partition(":")
            family = aliases.get(family, family)
            nums = [int(a) for a in args.split(",")]
            if family == "colored":
                r, n = nums
                return cls.colored(r, n)
            (n,) = nums
            return cls.symmetric(n) if family == "symmetric" else cls.hyperoctahedral(n)
        except (ValueError, TypeError) as exc:
            raise InvalidInput(f"cannot parse group {text!r}") from exc

    @property
    def order(self) -> int:
        return math.factorial(self.n) * self.r**self.n

    def __str__(self) -> str:
        if self.family == "colored":
            return f"colored:{self.r},{self.n}"
        return f"{self.family}:{self.n}"


def descriptor_of(g: Element) -> GroupDescriptor:
    if isinstance(g, Permutation):
        return GroupDescriptor.symmetric(g.n)
    if isinstance(g, SignedPermutation):
        return GroupDescriptor.hyperoctahedral(g.n)
    return GroupDescriptor.colored(g.r, g.n)


def _check_member(g: Element, d: GroupDescriptor | None) -> None:
    if d is not None and descriptor_of(g) != d:
        raise InvalidInput(f"{format_element(g)} is not in {d}")


# ---------------------------------------------------------------------------
# group operations


def identity(d: GroupDescriptor) -> Element:
    if d.family == "symmetric":
        return Permutation(tuple(range(1, d.n + 1)))
    if d.family == "hyperoctahedral":
        return SignedPermutation(tuple(range(1, d.n + 1)))
    return ColoredPermutation(d.r, tuple((i, 0) for i in range(1, d.n + 1)))


def compose(g: Element, h: Element, d: GroupDescriptor | None = None) -> Element:
    """Return ``g o h``, that is ``(g o h)(i) = g(h(i))``."""
    dg, dh = descriptor_of(g), descriptor_of(h)
    if dg != dh:
        raise InvalidInput(f"cannot compose elements of {dg} and {dh}")
    _check_member(g, d)
    if isinstance(g, Permutation):
        return Permutation(tuple(g.word[v - 1] for v in h.word))
    if isinstance(g, SignedPermutation):
        return SignedPermutation(
            tuple(g.word[abs(v) - 1] * (1 if v > 0 else -1) for v in h.word)
        )
    r = g.r
    out = []
    for v, k in h.word:
        w, p = g.word[v - 1]
        out.append((w, (k + p) % r))
    return ColoredPermutation(r, tuple(out))


def invert(g: Element, d: GroupDescriptor | None = None) -> Element:
    _check_member(g, d)
    n = g.n
    if isinstance(g, Permutation):
        out = [0] * n
        for i, v in enumerate(g.word, 1):
            out[v - 1] = i
        return Permutation(tuple(out))
    if isinstance(g, SignedPermutation):
        out = [0] * n
        for i, v in enumerate(g.word, 1):
            out[abs(v) - 1] = i if v > 0 else -i
        return SignedPermutation(tuple(out))
    cout: list[tuple[int, int]] = [(0, 0)] * n
    for i, (v, k) in enumerate(g.word, 1):
        cout[v - 1] = (i, (-k) % g.r)
    return ColoredPermutation(g.r, tuple(cout))


def complement_reverse(p: Permutation) -> Permutation:
    """The involution ``sigma(i) = n + 1 - pi(n + 1 - i)``."""
    n = p.n
    return Permutation(tuple(n + 1 - p.word[n - i] for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# descent sets on arbitrary words
#
# Each helper receives the word as a sequence of comparable keys.  Equal
# neighbours are never descents, which is what multiset words need.


def _descents(keys: Sequence) -> list[int]:
    return [i for i in range(1, len(keys)) if keys[i - 1] > keys[i]]


def word_des_set(word: Sequence[int]) -> list[int]:
    return _descents(word)


def word_cdes_set(word: Sequence[int]) -> list[int]:
    out = _descents(word)
    if len(word) > 1 and word[-1] > word[0]:
        out.append(len(word))
    return out


def signed_desA_set(word: Sequence[int]) -> list[int]:
    return _descents(word)


def signed_desB_set(word: Sequence[int]) -> list[int]:
    out = _descents(word)
    if word and word[0] < 0:
        out.insert(0, 0)
    return out


def signed_ades_set(word: Sequence[int]) -> list[int]:
    out = signed_desB_set(word)
    if word and word[-1] > 0:
        out.append(len(word))
    return out


def colored_key(letter: tuple[int, int]) -> tuple[int, int]:
    """Position of a colored letter ``(value, color)`` in the colored order."""
    return (letter[1], letter[0])


def colored_des_set(word: Sequence[tuple[int, int]], right: tuple[int, int] = (0, 1),
                    left: tuple[int, int] | None = None) -> list[int]:
    """Descents of a colored word padded with ``right`` (and optionally ``left``).

    Padding letters are ``(value, color)`` pairs; the default right pad is
    ``0_1``.  A left pad adds position 0 when it exceeds the first letter.
    """
    keys = [colored_key(x) for x in word] + [colored_key(right)]
    out = _descents(keys)
    if left is not None and word and colored_key(left) > keys[0]:
        out.insert(0, 0)
    return out


def colored_intdes_set(word: Sequence[tuple[int, int]]) -> list[int]:
    return _descents([colored_key(x) for x in word])


# ---------------------------------------------------------------------------
# statistics registry


def _des(p) -> int:
    return len(word_des_set(p.word))


def _maj(p) -> int:
    return sum(word_des_set(p.word))


def _comaj(p) -> int:
    n = len(p.word)
    return sum(n - i for i in word_des_set(p.word))


def _cdes(p) -> int:
    return len(word_cdes_set(p.word)) if len(p.word) > 1 else 0


def _negatives(g) -> int:
    return sum(1 for v in g.word if v < 0)


def _desA(g) -> int:
    return len(signed_desA_set(g.word))


def _desB(g) -> int:
    return len(signed_desB_set(g.word))


def _ades(g) -> int:
    return len(signed_ades_set(g.word))


def _amaj(g) -> int:
    return sum(signed_ades_set(g.word))


def _colored_des(g) -> int:
    return len(colored_des_set(g.word))


def _colored_maj(g) -> int:
    return sum(colored_des_set(g.word))


def _colored_fmaj(g) -> int:
    return g.r * _colored_maj(g) - sum(c for _, c in g.word)


# name -> (families, value function, set function or None)
_STATS: dict[str, tuple[tuple[str, ...], Callable, Callable | None]] = {
    "des": (("symmetric",), _des, lambda p: word_des_set(p.word)),
    "cdes": (("symmetric",), _cdes,
             lambda p: word_cdes_set(p.word) if p.n > 1 else []),
    "maj": (("symmetric", "hyperoctahedral"), _maj, None),
    "comaj": (("symmetric",), _comaj, None),
    "ides": (("symmetric",), lambda p: _des(invert(p)), None),
    "imaj": (("symmetric",), lambda p: _maj(invert(p)), None),
    "icomaj": (("symmetric",), lambda p: _comaj(invert(p)), None),
    "jointDesMaj": (("symmetric",), lambda p: (_des(p), _maj(p)), None),
    "desA": (("hyperoctahedral",), _desA, lambda g: signed_desA_set(g.word)),
    "desB": (("hyperoctahedral",), _desB, lambda g: signed_desB_set(g.word)),
    "ades": (("hyperoctahedral",), _ades, lambda g: signed_ades_set(g.word)),
    "fdes": (("hyperoctahedral",), lambda g: _desA(g) + _desB(g), None),
    "amaj": (("hyperoctahedral",), _amaj, None),
    "neg": (("hyperoctahedral",), _negatives, None),
    "fmajB": (("hyperoctahedral",), lambda g: 2 * _maj(g) + _negatives(g), None),
    "famajB": (("hyperoctahedral",), lambda g: 2 * _amaj(g) + _negatives(g), None),
    "desColored": (("colored",), _colored_des, lambda g: colored_des_set(g.word)),
    "intdes": (("colored",), lambda g: len(colored_intdes_set(g.word)),
               lambda g: colored_intdes_set(g.word)),
    "majColored": (("colored",), _colored_maj, None),
    "fmajColored": (("colored",), _colored_fmaj, None),
}

# set-valued statistics used for descent-set fibers
_SET_STATS = {
    "DesSet": "des",
    "cDesSet": "cdes",
    "DesASet": "desA",
    "DesBSet": "desB",
    "aDesSet": "ades",
    "DesColoredSet": "desColored",
}

STATISTIC_IDS = tuple(_STATS) + tuple(_SET_STATS)


def resolve_statistic(name: str, d: GroupDescriptor) -> str:
    """Map family-dependent aliases (``des`` on colored groups) to registry names."""
    if d.family == "colored":
        name = {"des": "desColored", "maj": "majColored", "fmaj": "fmajColored"}.get(name, name)
    if d.family == "hyperoctahedral":
        name = {"fmaj": "fmajB", "famaj": "famajB"}.get(name, name)
    if name in _SET_STATS:
        base = _SET_STATS[name]
        if d.family == "colored" and base == "des":
            base = "desColored"
        fams = _STATS[base][0]
    elif name in _STATS:
        fams = _STATS[name][0]
    else:
        raise InvalidInput(f"unknown statistic {name!r}")
    if d.family not in fams:
        raise InvalidInput(f"statistic {name!r} does not apply to {d}")
    return name


def statistic(g: Element, s: str, d: GroupDescriptor | None = None) -> Hashable:
    d = d or descriptor_of(g)
    _check_member(g, d)
    s = resolve_statistic(s, d)
    if s in _SET_STATS:
        return tuple(descent_set(g, _SET_STATS[s], d))
    return _STATS[s][1](g)


def statistic_function(s: str, d: GroupDescriptor) -> Callable[[Element], Hashable]:
    s = resolve_statistic(s, d)
    if s in _SET_STATS:
        base = resolve_statistic(_SET_STATS[s], d)
        setfn = _STATS[base][2]
        return lambda g: tuple(setfn(g))
    return _STATS[s][1]


def descent_set(g: Element, variant: str, d: GroupDescriptor | None = None) -> list[int]:
    """Descent set for a set-valued variant such as ``des``, ``desB`` or ``ades``."""
    d = d or descriptor_of(g)
    _check_member(g, d)
    variant = resolve_statistic(_SET_STATS.get(variant, variant), d)
    fn = _STATS[variant][2]
    if fn is None:
        raise InvalidInput(f"{variant!r} is not a descent-set statistic")
    return list(fn(g))


# ---------------------------------------------------------------------------
# enumeration


def _check_budget(what: str, size: int, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if size > budget:
        raise BudgetExceeded(what, size, budget)


def enumerate_group(d: GroupDescriptor, budget: int | None = None) -> Iterator[Element]:
    """All elements once each, in lexicographic order of the encoded word."""
    _check_budget(str(d), d.order, budget)
    n = d.n
    if d.family == "symmetric":
        for w in itertools.permutations(range(1, n + 1)):
            yield Permutation(w)
    elif d.family == "hyperoctahedral":
        words = []
        for w in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((-1, 1), repeat=n):
                words.append(tuple(s * v for s, v in zip(signs, w)))
        for w in sorted(words):
            yield SignedPermutation(w)
    else:
        r = d.r
        for w in itertools.permutations(range(1, n + 1)):
            for colors in itertools.product(range(r), repeat=n):
                yield ColoredPermutation(r, tuple(zip(w, colors)))


def _weak_composition_word(alpha: Sequence[int]) -> list[int]:
    if any(a < 0 for a in alpha):
        raise InvalidInput("composition entries must be nonnegative")
    return [i for i, a in enumerate(alpha, 1) for _ in range(a)]


def multiset_permutations(letters: Sequence) -> Iterator[tuple]:
    """Distinct arrangements of ``letters`` in lexicographic order."""
    pool = sorted(letters)
    n = len(pool)
    if n == 0:
        yield ()
        return
    # next-permutation walk over the sorted pool
    a = list(pool)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and not a[i] < a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while not a[i] < a[j]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def enumerate_words(kind: str, alpha: Sequence[int], r: int = 1,
                    budget: int | None = None) -> Iterator[tuple]:
    """Words of the multiset ``1^alpha_1 2^alpha_2 ...``.

    ``signedMultiset`` attaches every choice of signs; ``coloredMultiset``
    attaches every choice of colors and yields ``(value, color)`` pairs.
    """
    base = _weak_composition_word(alpha)
    n = len(base)
    count = math.factorial(n)
    for a in alpha:
        count //= math.factorial(a)
    if kind == "multiset":
        _check_budget("multiset", count, budget)
        yield from multiset_permutations(base)
    elif kind == "signedMultiset":
        _check_budget("signed multiset", count * 2**n, budget)
        for w in multiset_permutations(base):
            for signs in itertools.product((-1, 1), repeat=n):
                yield tuple(s * v for s, v in zip(signs, w))
    elif kind == "coloredMultiset":
        if r < 1:
            raise InvalidInput("r must be at least 1")
        _check_budget("colored multiset", count * r**n, budget)
        for w in multiset_permutations(base):
            for colors in itertools.product(range(r), repeat=n):
                yield tuple(zip(w, colors))
    else:
        raise InvalidInput(f"unknown word kind {kind!r}")


# word-level statistics, sharing the descent-set helpers above


def word_statistic(word: Sequence, s: str, r: int | None = None) -> int:
    """Statistics on multiset words; equal neighbours are never descents."""
    n = len(word)
    if s == "des":
        return len(word_des_set(word))
    if s == "maj":
        return sum(word_des_set(word))
    if s == "comaj":
        return sum(n - i for i in word_des_set(word))
    if s == "desA":
        return len(signed_desA_set(word))
    if s == "desB":
        return len(signed_desB_set(word))
    if s == "ades":
        return len(signed_ades_set(word))
    if s == "amaj":
        return sum(signed_ades_set(word))
    if s == "neg":
        return sum(1 for v in word if v < 0)
    if s == "fmajB":
        return 2 * sum(word_des_set(word)) + sum(1 for v in word if v < 0)
    if s == "famajB":
        return 2 * sum(signed_ades_set(word)) + sum(1 for v in word if v < 0)
    if s == "desColored":
        return len(colored_des_set(word))
    if s == "majColored":
        return sum(colored_des_set(word))
    if s == "fmajColored":
        if r is None:
            raise InvalidInput("fmajColored needs r")
        return r * sum(colored_des_set(word)) - sum(c for _, c in word)
    raise InvalidInput(f"unknown word statistic {s!r}")


# ---------------------------------------------------------------------------
# text encodings


def parse_element(text: str, d: GroupDescriptor) -> Element:
    """Parse ``51423``, ``-5,1,4,-2,3`` or ``3^1 1^1 4^0 2^3`` for the given group."""
    text = text.strip()
    try:
        if d.family == "symmetric":
            if "," in text or " " in text:
                word = tuple(int(t) for t in text.replace(",", " ").split())
            else:
                word = tuple(int(ch) for ch in text)
            g: Element = Permutation(word)
        elif d.family == "hyperoctahedral":
            parts = text.replace(" ", ",").split(",")
            g = SignedPermutation(tuple(int(t) for t in parts if t))
        else:
            letters = []
            for tok in text.split():
                v, _, c = tok.partition("^")
                letters.append((int(v), int(c or 0)))
            g = ColoredPermutation(d.r, tuple(letters))
    except ValueError as exc:
        raise InvalidInput(f"cannot parse {text!r} as an element of {d}") from exc
    if g.n != d.n:
        raise InvalidInput(f"{text!r} has length {g.n}, expected {d.n}")
    return g


def format_element(g: Element) -> str:
    if isinstance(g, Permutation):
        if g.n < 10:
            return "".join(str(v) for v in g.word)
        return ",".join(str(v) for v in g.word)
    if isinstance(g, SignedPermutation):
        return ",".join(str(v) for v in g.word)
    return " ".join(f"{v}^{c}" for v, c in g.word)


def colored_word(text: str) -> tuple[tuple[int, int], ...]:
    """Parse a colored word such as ``1^0 2^1`` without group checks."""
    out = []
    for tok in text.split():
        v, _, c = tok.partition("^")
        out.append((int(v), int(c or 0)))
    return tuple(out)


def elements_from(items: Iterable[str], d: GroupDescriptor) -> list[Element]:
    return [parse_element(t, d) for t in items]
