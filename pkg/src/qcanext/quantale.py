"""Finite quantales with exact arithmetic.

A quantale is a complete lattice ``(Q, ⊑, ⊔)`` with an associative unital
multiplication that distributes over joins.  Multiplication has two
residuals, written here as methods::

    b ⊑ q.rres(a, c)   <=>   q.mul(a, b) ⊑ c   <=>   a ⊑ q.lres(c, b)

Four finite instances are provided:

``Bool2()``
    truth values ``False ⊑ True`` with ``and`` as multiplication.
``LawvereChain(N)``
    ``{0..N}`` ordered by ``>=`` with capped addition; ``N`` plays ``∞``.
``SimilarityChain(N)``
    ``{0..N, INF}`` ordered numerically with ``min`` as multiplication.
``LanguageTrunc(alphabet, max_len)``
    sets of words of length at most ``max_len`` with truncated concatenation.

Values are plain Python objects (``bool``, ``int``, :data:`INF`,
``frozenset`` of ``str``).  Internal modules call the unchecked
``_mul``/``_rres``/... methods; the public ones validate their arguments.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, InvalidInput

__all__ = [
    "INF",
    "Quantale",
    "Bool2",
    "LawvereChain",
    "SimilarityChain",
    "LanguageTrunc",
    "opposite",
    "QuantaleTables",
    "LawResult",
    "LawReport",
    "check_quantale_laws",
    "DEFAULT_LAW_BUDGET",
    "TABLE_LIMIT",
]

#: bound on ``|carrier|**3`` for the exhaustive law checker
DEFAULT_LAW_BUDGET = 12_000_000
#: carriers up to this size get dense numpy operation tables
TABLE_LIMIT = 512
#: bound on the number of elements materialised by ``Quantale.carrier``
DEFAULT_CARRIER_BUDGET = 1 << 16


class _Infinity:
    """The top element ``∞`` of a similarity chain; compares above every int."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("qcanext.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


class Quantale:
    """Common interface of the finite quantales.

    Subclasses implement the unchecked primitives.  Instances are immutable
    and compare equal when they describe the same quantale.
    """

    kind: str = ""
    commutative: bool = True

    # -- primitives (unchecked) -------------------------------------------
    def _mul(self, a, b):
        raise NotImplementedError

    def _rres(self, a, c):
        raise NotImplementedError

    def _lres(self, c, a):
        raise NotImplementedError

    def _leq(self, a, b):
        raise NotImplementedError

    def _join2(self, a, b):
        raise NotImplementedError

    def _meet2(self, a, b):
        raise NotImplementedError

    def _contains(self, v) -> bool:
        raise NotImplementedError

    def _enumerate(self):
        raise NotImplementedError

    @property
    def unit(self):
        raise NotImplementedError

    @property
    def top(self):
        raise NotImplementedError

    @property
    def bottom(self):
        raise NotImplementedError

    @property
    def carrier_size(self) -> int:
        raise NotImplementedError

    def sort_key(self, v):
        """Position of ``v`` in the fixed carrier enumeration order."""
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def format(self, v) -> str:
        return str(v)

    def value_to_json(self, v):
        return v

    def value_from_json(self, obj):
        raise NotImplementedError

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Quantale) and repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))

    def __repr__(self):
        return f"{type(self).__name__}({self._repr_args()})"

    def _repr_args(self):
        return ""

    # -- checked API ------------------------------------------------------
    def check(self, v):
        """Return ``v`` unchanged, or raise :class:`InvalidInput`."""
        if not self._contains(v):
            raise InvalidInput(f"{v!r} is not an element of {self!r}")
        return v

    def mul(self, a, b):
        return self._mul(self.check(a), self.check(b))

    def rres(self, a, c):
        """Right residual ``a ▷ c = ⊔{b : a·b ⊑ c}``."""
        return self._rres(self.check(a), self.check(c))

    def lres(self, c, a):
        """Left residual ``c ◁ a = ⊔{b : b·a ⊑ c}``."""
        return self._lres(self.check(c), self.check(a))

    def leq(self, a, b) -> bool:
        return self._leq(self.check(a), self.check(b))

    def join(self, values):
        acc = self.bottom
        for v in values:
            acc = self._join2(acc, self.check(v))
        return acc

    def meet(self, values):
        acc = self.top
        for v in values:
            acc = self._meet2(acc, self.check(v))
        return acc

    # unchecked folds used on hot paths
    def _join(self, values):
        acc = self.bottom
        for v in values:
            acc = self._join2(acc, v)
        return acc

    def _meet(self, values):
        acc = self.top
        for v in values:
            acc = self._meet2(acc, v)
        return acc

    def carrier(self, budget: int = DEFAULT_CARRIER_BUDGET) -> tuple:
        """All elements in the fixed enumeration order."""
        if self.carrier_size > budget:
            raise BudgetExceeded(
                f"{self!r} has {self.carrier_size} elements, budget is {budget}",
                required=self.carrier_size,
                budget=budget,
            )
        return self._carrier_cached()

    @functools.lru_cache(maxsize=None)
    def _carrier_cached(self):
        return tuple(self._enumerate())

    def opposite(self) -> "Quantale":
        return opposite(self)

    @property
    def tabulated(self) -> bool:
        return self.carrier_size <= TABLE_LIMIT

    def tables(self) -> "QuantaleTables":
        """Dense operation tables over carrier codes (small carriers only)."""
        if not self.tabulated:
            raise BudgetExceeded(
                f"{self!r} is too large to tabulate ({self.carrier_size} elements)",
                required=self.carrier_size,
                budget=TABLE_LIMIT,
            )
        return _build_tables(self)


class Bool2(Quantale):
    """The two-chain; multiplication is conjunction, residuals are implication."""

    kind = "bool2"

    def _mul(self, a, b):
        return a and b

    def _rres(self, a, c):
        return (not a) or c

    def _lres(self, c, a):
        return (not a) or c

    def _leq(self, a, b):
        return (not a) or b

    def _join2(self, a, b):
        return a or b

    def _meet2(self, a, b):
        return a and b

    def _contains(self, v):
        return isinstance(v, bool)

    def _enumerate(self):
        return (False, True)

    unit = property(lambda self: True)
    top = property(lambda self: True)
    bottom = property(lambda self: False)
    carrier_size = property(lambda self: 2)

    def sort_key(self, v):
        return int(v)

    def describe(self):
        return {"kind": "bool2"}

    def format(self, v):
        return "1" if v else "0"

    def value_from_json(self, obj):
        if not isinstance(obj, bool):
            raise InvalidInput(f"expected true/false for bool2, got {obj!r}")
        return obj


def _check_bound(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInput(f"chain bound must be an integer >= 1, got {n!r}")
    return n


class LawvereChain(Quantale):
    """``{0..N}`` ordered by ``>=``; ``a·b = min(a+b, N)``.

    ``0`` is both top and unit, ``N`` is bottom.  Joins are numeric minima.
    """

    kind = "lawvere"

    def __init__(self, n: int):
        self.n = _check_bound(n)

    def _repr_args(self):
        return str(self.n)

    def _mul(self, a, b):
        s = a + b
        return s if s < self.n else self.n

    def _rres(self, a, c):
        return c - a if c > a else 0

    def _lres(self, c, a):
        return c - a if c > a else 0

    def _leq(self, a, b):
        return a >= b

    def _join2(self, a, b):
        return a if a < b else b

    def _meet2(self, a, b):
        return a if a > b else b

    def _contains(self, v):
        return type(v) is int and 0 <= v <= self.n

    def _enumerate(self):
        return range(self.n + 1)

    unit = property(lambda self: 0)
    top = property(lambda self: 0)
    bottom = property(lambda self: self.n)
    carrier_size = property(lambda self: self.n + 1)

    def sort_key(self, v):
        return v

    def describe(self):
        return {"kind": "lawvere", "N": self.n}

    def value_from_json(self, obj):
        if type(obj) is not int or not 0 <= obj <= self.n:
            raise InvalidInput(f"expected an integer in 0..{self.n}, got {obj!r}")
        return obj


class SimilarityChain(Quantale):
    """``{0..N, ∞}`` ordered numerically; multiplication is ``min``.

    ``∞`` is top and unit, ``0`` is bottom; ``m ▷ n`` is ``∞`` when
    ``m <= n`` and ``n`` otherwise.
    """

    kind = "similarity"

    def __init__(self, n: int):
        self.n = _check_bound(n)

    def _repr_args(self):
        return str(self.n)

    def _mul(self, a, b):
        return a if a <= b else b

    def _rres(self, a, c):
        return INF if a <= c else c

    def _lres(self, c, a):
        return INF if a <= c else c

    def _leq(self, a, b):
        return a <= b

    _join2 = staticmethod(lambda a, b: a if a >= b else b)
    _meet2 = staticmethod(lambda a, b: a if a <= b else b)

    def _contains(self, v):
        return v is INF or (type(v) is int and 0 <= v <= self.n)

    def _enumerate(self):
        return (*range(self.n + 1), INF)

    unit = property(lambda self: INF)
    top = property(lambda self: INF)
    bottom = property(lambda self: 0)
    carrier_size = property(lambda self: self.n + 2)

    def sort_key(self, v):
        return self.n + 1 if v is INF else v

    def describe(self):
        return {"kind": "similarity", "N": self.n}

    def value_to_json(self, v):
        return "inf" if v is INF else v

    def value_from_json(self, obj):
        if obj == "inf":
            return INF
        if type(obj) is not int or not 0 <= obj <= self.n:
            raise InvalidInput(f"expected 0..{self.n} or \"inf\", got {obj!r}")
        return obj


class LanguageTrunc(Quantale):
    """Languages over ``alphabet`` truncated to words of length ``<= max_len``.

    Concatenation drops words that are too long, which makes truncation a
    quantale quotient of ``P(Σ*)``.  Residuals are computed inside the
    quotient, so a word ``w`` belongs to ``L ▷ M`` as soon as every ``vw``
    with ``v ∈ L`` is either in ``M`` or too long to be represented.
    Symbols must be single characters; words are plain strings, ``""`` is ε.
    """

    kind = "language"

    def __init__(self, alphabet, max_len: int):
        symbols = tuple(alphabet)
        if not symbols:
            raise InvalidInput("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise InvalidInput(f"alphabet has duplicate symbols: {symbols!r}")
        if not all(isinstance(s, str) and len(s) == 1 for s in symbols):
            raise InvalidInput("alphabet symbols must be single characters")
        if isinstance(max_len, bool) or not isinstance(max_len, int) or max_len < 0:
            raise InvalidInput(f"maxLen must be a natural number, got {max_len!r}")
        self.alphabet = symbols
        self.max_len = max_len
        self.commutative = len(symbols) == 1
        self.words = tuple(
            "".join(p)
            for k in range(max_len + 1)
            for p in itertools.product(symbols, repeat=k)
        )
        self._word_index = {w: i for i, w in enumerate(self.words)}
        self._all = frozenset(self.words)
        self._empty = frozenset()
        self._eps = frozenset({""})
        self._mul = functools.lru_cache(maxsize=1 << 18)(self._mul_impl)
        self._rres = functools.lru_cache(maxsize=1 << 18)(self._rres_impl)
        self._lres = functools.lru_cache(maxsize=1 << 18)(self._lres_impl)

    def _repr_args(self):
        return f"{''.join(self.alphabet)!r}, {self.max_len}"

    def _mul_impl(self, a, b):
        k = self.max_len
        return frozenset(v + w for v in a for w in b if len(v) + len(w) <= k)

    def _rres_impl(self, a, c):
        k = self.max_len
        return frozenset(
            w for w in self.words if all(len(v) + len(w) > k or v + w in c for v in a)
        )

    def _lres_impl(self, c, a):
        k = self.max_len
        return frozenset(
            w for w in self.words if all(len(w) + len(v) > k or w + v in c for v in a)
        )

    def _leq(self, a, b):
        return a <= b

    def _join2(self, a, b):
        return a | b

    def _meet2(self, a, b):
        return a & b

    def _contains(self, v):
        return isinstance(v, frozenset) and v <= self._all

    def _enumerate(self):
        n = len(self.words)
        subsets = (
            frozenset(self.words[i] for i in idx)
            for size in range(n + 1)
            for idx in itertools.combinations(range(n), size)
        )
        return subsets

    unit = property(lambda self: self._eps)
    top = property(lambda self: self._all)
    bottom = property(lambda self: self._empty)
    carrier_size = property(lambda self: 1 << len(self.words))

    def sort_key(self, v):
        return (len(v), tuple(sorted(self._word_index[w] for w in v)))

    def describe(self):
        return {"kind": "language", "alphabet": list(self.alphabet), "maxLen": self.max_len}

    def lang(self, *words) -> frozenset:
        """Build a checked language value from words."""
        return self.check(frozenset(words))

    def sorted_words(self, v):
        return sorted(v, key=self._word_index.__getitem__)

    def format(self, v):
        return "{" + ",".join(w or "ε" for w in self.sorted_words(v)) + "}"

    def value_to_json(self, v):
        return self.sorted_words(v)

    def value_from_json(self, obj):
        if not isinstance(obj, list) or not all(isinstance(w, str) for w in obj):
            raise InvalidInput(f"expected an array of words, got {obj!r}")
        v = frozenset(obj)
        if not v <= self._all:
            bad = sorted(v - self._all)
            raise InvalidInput(f"words {bad!r} are not in the truncated alphabet")
        return v


class Opposite(Quantale):
    """``base`` with multiplication reversed; the residuals swap roles."""

    def __init__(self, base: Quantale):
        self.base = base
        self.kind = base.kind
        self.commutative = base.commutative

    def _repr_args(self):
        return repr(self.base)

    def _mul(self, a, b):
        return self.base._mul(b, a)

    def _rres(self, a, c):
        return self.base._lres(c, a)

    def _lres(self, c, a):
        return self.base._rres(a, c)

    def _leq(self, a, b):
        return self.base._leq(a, b)

    def _join2(self, a, b):
        return self.base._join2(a, b)

    def _meet2(self, a, b):
        return self.base._meet2(a, b)

    def _contains(self, v):
        return self.base._contains(v)

    def _enumerate(self):
        return self.base.carrier(budget=self.base.carrier_size)

    unit = property(lambda self: self.base.unit)
    top = property(lambda self: self.base.top)
    bottom = property(lambda self: self.base.bottom)
    carrier_size = property(lambda self: self.base.carrier_size)

    def sort_key(self, v):
        return self.base.sort_key(v)

    def describe(self):
        return {**self.base.describe(), "opposite": True}

    def format(self, v):
        return self.base.format(v)

    def value_to_json(self, v):
        return self.base.value_to_json(v)

    def value_from_json(self, obj):
        return self.base.value_from_json(obj)


def opposite(q: Quantale) -> Quantale:
    """The quantale with reversed multiplication (same order).

    Commutative quantales are their own opposite, and ``opposite`` is an
    involution on the nose.
    """
    if isinstance(q, Opposite):
        return q.base
    if q.commutative:
        return q
    return Opposite(q)


# ---------------------------------------------------------------------------
# dense tables and the exhaustive law checker


@dataclass(frozen=True)
class QuantaleTables:
    """Operation tables indexed by carrier codes (positions in ``carrier``)."""

    carrier: tuple
    mul: np.ndarray
    rres: np.ndarray  # rres[a, c] = a ▷ c
    lres: np.ndarray  # lres[c, a] = c ◁ a
    leq: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    unit: int
    top: int
    bottom: int
    code: dict = field(repr=False)

    def encode(self, matrix) -> np.ndarray:
        return np.array([[self.code[v] for v in row] for row in matrix], dtype=np.int32)


@functools.lru_cache(maxsize=32)
def _build_tables(q: Quantale) -> QuantaleTables:
    carrier = q.carrier(budget=TABLE_LIMIT)
    n = len(carrier)
    code = {v: i for i, v in enumerate(carrier)}

    def table(op, dtype=np.int32):
        out = np.empty((n, n), dtype=dtype)
        for i, a in enumerate(carrier):
            for j, b in enumerate(carrier):
                r = op(a, b)
                out[i, j] = r if dtype is bool else code[r]
        return out

    tabs = QuantaleTables(
        carrier=carrier,
        mul=table(q._mul),
        rres=table(q._rres),
        lres=table(q._lres),
        leq=table(q._leq, dtype=bool),
        join=table(q._join2),
        meet=table(q._meet2),
        unit=code[q.unit],
        top=code[q.top],
        bottom=code[q.bottom],
        code=code,
    )
    for arr in (tabs.mul, tabs.rres, tabs.lres, tabs.leq, tabs.join, tabs.meet):
        arr.setflags(write=False)
    return tabs


@dataclass(frozen=True)
class LawResult:
    name: str
    passed: bool
    counterexample: tuple | None = None

    def __str__(self):
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name} at {self.counterexample}"


@dataclass(frozen=True)
class LawReport:
    quantale: Quantale
    results: tuple
    commutative: bool
    residuals_coincide: bool

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self):
        return [r for r in self.results if not r.passed]


def _first_false(mask, carrier):
    """Decode the first False position of ``mask`` into carrier values."""
    if mask.all():
        return None
    idx = np.unravel_index(np.argmin(mask), mask.shape)
    return tuple(carrier[int(i)] for i in idx)


def check_quantale_laws(q: Quantale, budget: int = DEFAULT_LAW_BUDGET) -> LawReport:
    """Verify every quantale law by exhaustive quantification over the carrier.

    Covers the lattice structure, the monoid laws, distributivity over
    binary and empty joins, both residual adjunctions and the derived
    residual laws (counits, mixed associativity, composition, unit).
    Raises :class:`BudgetExceeded` when ``|carrier|**3`` exceeds ``budget``.
    """
    size = q.carrier_size
    if size**3 > budget:
        raise BudgetExceeded(
            f"law check on {q!r} needs {size**3} triples, budget is {budget}",
            required=size**3,
            budget=budget,
        )
    t = _tables_for_laws(q)
    n = len(t.carrier)
    mul, rres, lres, leq, join, meet = t.mul, t.rres, t.lres, t.leq, t.join, t.meet
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    a2 = np.arange(n)[:, None]
    b2 = np.arange(n)[None, :]
    one = np.arange(n)
    e, top, bot = t.unit, t.top, t.bottom

    results = []

    def law(name, mask):
        results.append(LawResult(name, bool(mask.all()), _first_false(mask, t.carrier)))

    law("order reflexive", leq[one, one])
    law("order antisymmetric", ~(leq[a2, b2] & leq[b2, a2]) | (a2 == b2))
    law("order transitive", ~(leq[a, b] & leq[b, c]) | leq[a, c])
    law("bottom and top", leq[bot, one] & leq[one, top])
    jab = join[a2, b2]
    law("join is upper bound", leq[a2, jab] & leq[b2, jab])
    law("join is least", ~(leq[a, c] & leq[b, c]) | leq[join[a, b], c])
    mab = meet[a2, b2]
    law("meet is lower bound", leq[mab, a2] & leq[mab, b2])
    law("meet is greatest", ~(leq[c, a] & leq[c, b]) | leq[c, meet[a, b]])
    law("associativity", mul[mul[a, b], c] == mul[a, mul[b, c]])
    law("unit", (mul[e, one] == one) & (mul[one, e] == one))
    law("left distributivity", mul[a, join[b, c]] == join[mul[a, b], mul[a, c]])
    law("right distributivity", mul[join[a, b], c] == join[mul[a, c], mul[b, c]])
    law("bottom annihilates", (mul[bot, one] == bot) & (mul[one, bot] == bot))
    below = leq[mul[a, b], c]
    law("right residual adjunction", below == leq[b, rres[a, c]])
    law("left residual adjunction", below == leq[a, lres[c, b]])
    law("right residual counit", leq[mul[a2, rres[a2, b2]], b2])
    law("left residual counit", leq[mul[lres[b2, a2], a2], b2])
    law("mixed associativity", rres[a, lres[b, c]] == lres[rres[a, b], c])
    law("right residual composition", leq[mul[rres[a, b], rres[b, c]], rres[a, c]])
    law("left residual composition", leq[mul[lres[c, b], lres[b, a]], lres[c, a]])
    law("right residual unit", leq[e, rres[one, one]])
    law("left residual unit", leq[e, lres[one, one]])
    # (-▷r) ⊣ (r◁-) between Ω^∂ and Ω:  b ⊑ a▷r  <=>  a ⊑ r◁b
    law("residual Galois connection", leq[b, rres[a, c]] == leq[a, lres[c, b]])

    commutative = bool((mul[a2, b2] == mul[b2, a2]).all())
    coincide = bool((rres[a2, b2] == lres[b2, a2]).all())
    return LawReport(q, tuple(results), commutative, coincide)


def _tables_for_laws(q: Quantale) -> QuantaleTables:
    if q.tabulated:
        return q.tables()
    return _uncached_tables(q)


def _uncached_tables(q):
    # large carriers that still fit the law budget; not worth caching
    carrier = q.carrier(budget=q.carrier_size)
    n = len(carrier)
    code = {v: i for i, v in enumerate(carrier)}
    mul = np.empty((n, n), dtype=np.int32)
    rres = np.empty_like(mul)
    lres = np.empty_like(mul)
    join = np.empty_like(mul)
    meet = np.empty_like(mul)
    leq = np.empty((n, n), dtype=bool)
    for i, x in enumerate(carrier):
        for j, y in enumerate(carrier):
            mul[i, j] = code[q._mul(x, y)]
            rres[i, j] = code[q._rres(x, y)]
            lres[i, j] = code[q._lres(x, y)]
            join[i, j] = code[q._join2(x, y)]
            meet[i, j] = code[q._meet2(x, y)]
            leq[i, j] = q._leq(x, y)
    return QuantaleTables(
        carrier, mul, rres, lres, leq, join, meet,
        code[q.unit], code[q.top], code[q.bottom], code,
    )
