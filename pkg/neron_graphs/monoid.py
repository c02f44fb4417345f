"""
Free commutative monoids over finite prime alphabets.

Labels of dual graphs (thicknesses of nodes) live in the monoid of principal
ideals of a factorial local ring, which is free on the prime ideals. Here the
primes are opaque symbols and a label is a multiset of them, written
multiplicatively: ``u^2*v`` has exponent vector ``(2, 1)`` over ``(u, v)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .errors import (
    AlphabetError,
    UndefinedComplexityError,
    UndefinedRootError,
    UndefinedTypeError,
)

SYMBOL_RE = re.compile(r"^[A-Za-z0-9_]+$")
FACTOR_RE = re.compile(r"^([A-Za-z0-9_]+)(?:\^([0-9]+))?$")


@dataclass(frozen=True)
class PrimeAlphabet:
    """
    An ordered finite set of prime symbols.

    The order is the canonical order used for serialization, iteration and
    the lexicographic order on exponent vectors.

    :param symbols: Distinct symbol names over ``[A-Za-z0-9_]``.
    :type symbols: :class:`tuple` of :class:`str`

    :raises AlphabetError: On duplicate or malformed symbols.
    """

    symbols: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))

        for sym in self.symbols:
            if not isinstance(sym, str) or not SYMBOL_RE.match(sym):
                raise AlphabetError(f"invalid prime symbol {sym!r}")

        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError(f"duplicate prime symbols in {list(self.symbols)}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, sym: object) -> bool:
        return sym in self.symbols

    def index(self, sym: str) -> int:
        try:
            return self.symbols.index(sym)
        except ValueError:
            raise AlphabetError(f"symbol {sym!r} not in alphabet {list(self.symbols)}")


@dataclass(frozen=True)
class MonoidElement:
    """
    An element of the free commutative monoid over ``alphabet``.

    Stored as the exponent vector in alphabet order. The identity is the
    zero vector; its text form is ``"1"`` and its JSON form ``{}``.

    Use :meth:`of`, :meth:`identity`, :meth:`prime` or :func:`parse` rather
    than the raw constructor.

    :param alphabet: The prime alphabet.
    :type alphabet: :class:`PrimeAlphabet`
    :param vector: Non-negative exponent of every symbol, in alphabet order.
    :type vector: :class:`tuple` of :class:`int`
    """

    alphabet: PrimeAlphabet
    vector: Tuple[int, ...]

    def __post_init__(self) -> None:
        vector = tuple(self.vector)

        if len(vector) != len(self.alphabet):
            raise AlphabetError(
                f"exponent vector of length {len(vector)} over an alphabet of size {len(self.alphabet)}"
            )

        for exp in vector:
            if type(exp) is not int or exp < 0:
                raise AlphabetError(f"exponents must be non-negative integers, got {exp!r}")

        object.__setattr__(self, "vector", vector)

    @classmethod
    def of(cls, alphabet: PrimeAlphabet, exponents: Mapping[str, int]) -> MonoidElement:
        """
        Build an element from a symbol to exponent mapping.

        :param alphabet: The prime alphabet.
        :param exponents: Every key in ``alphabet``, every value ``>= 1``.
        :raises AlphabetError: On unknown symbols or non-positive exponents.
        """
        vector = [0] * len(alphabet)

        for sym, exp in exponents.items():
            if type(exp) is not int or exp < 1:
                raise AlphabetError(f"exponent of {sym!r} must be a positive integer, got {exp!r}")
            vector[alphabet.index(sym)] = exp

        return cls(alphabet, tuple(vector))

    @classmethod
    def identity(cls, alphabet: PrimeAlphabet) -> MonoidElement:
        return cls(alphabet, (0,) * len(alphabet))

    @classmethod
    def prime(cls, alphabet: PrimeAlphabet, sym: str) -> MonoidElement:
        return cls.of(alphabet, {sym: 1})

    @property
    def exponents(self) -> Dict[str, int]:
        """Symbol to exponent mapping, positive exponents only, alphabet order."""
        return {s: e for s, e in zip(self.alphabet, self.vector) if e}

    @property
    def is_identity(self) -> bool:
        return not any(self.vector)

    @property
    def degree(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(self.vector)

    def support(self) -> Tuple[str, ...]:
        return tuple(s for s, e in zip(self.alphabet, self.vector) if e)

    def __mul__(self, other: MonoidElement) -> MonoidElement:
        return mul(self, other)

    def __pow__(self, k: int) -> MonoidElement:
        return power(self, k)

    def __str__(self) -> str:
        if self.is_identity:
            return "1"

        return "*".join(
            sym if exp == 1 else f"{sym}^{exp}" for sym, exp in self.exponents.items()
        )


def _check_same(a: MonoidElement, b: MonoidElement) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetError(
            f"elements over different alphabets: {list(a.alphabet)} and {list(b.alphabet)}"
        )


def parse(alphabet: PrimeAlphabet, text: str) -> MonoidElement:
    """
    Parse the text form, e.g. ``"u^2*v"``; ``"1"`` is the identity.

    Repeated factors accumulate, so ``"u*u"`` equals ``"u^2"``.

    :raises AlphabetError: On unknown symbols or malformed factors.
    """
    text = text.strip()

    if text == "1":
        return MonoidElement.identity(alphabet)

    counts: Dict[str, int] = {}

    for factor in text.split("*"):
        match = FACTOR_RE.match(factor.strip())

        if not match:
            raise AlphabetError(f"malformed factor {factor!r} in {text!r}")

        sym, exp = match.group(1), int(match.group(2) or 1)

        if exp < 1:
            raise AlphabetError(f"exponent of {sym!r} must be positive in {text!r}")

        counts[sym] = counts.get(sym, 0) + exp

    return MonoidElement.of(alphabet, counts)


def mul(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    """
    The monoid law: pointwise sum of exponents.

    :raises AlphabetError: If ``a`` and ``b`` use different alphabets.
    """
    _check_same(a, b)
    return MonoidElement(a.alphabet, tuple(x + y for x, y in zip(a.vector, b.vector)))


def power(m: MonoidElement, k: int) -> MonoidElement:
    """``m`` raised to ``k >= 0``; ``k = 0`` gives the identity."""
    if k < 0:
        raise ValueError(f"negative power {k} in a monoid")

    return MonoidElement(m.alphabet, tuple(x * k for x in m.vector))


def divides(a: MonoidElement, b: MonoidElement) -> Optional[MonoidElement]:
    """
    Return the quotient ``b / a`` when ``a`` divides ``b``, else ``None``.

    :param a: The candidate divisor.
    :type a: :class:`MonoidElement`
    :param b: The dividend.
    :type b: :class:`MonoidElement`
    :returns: ``q`` with ``a * q == b``, or ``None``.
    :rtype: :class:`MonoidElement` or ``None``
    :raises AlphabetError: If ``a`` and ``b`` use different alphabets.
    """
    _check_same(a, b)

    if any(x > y for x, y in zip(a.vector, b.vector)):
        return None

    return MonoidElement(a.alphabet, tuple(y - x for x, y in zip(a.vector, b.vector)))


def complexity(m: MonoidElement) -> int:
    """
    Arithmetic complexity: number of prime factors minus one.

    :raises UndefinedComplexityError: For the identity.
    """
    if m.is_identity:
        raise UndefinedComplexityError("arithmetic complexity of the identity is undefined")

    return m.degree - 1


def is_prime(m: MonoidElement) -> bool:
    return m.degree == 1


def is_prime_power(m: MonoidElement) -> Optional[str]:
    """Return the prime ``p`` if ``m = p^k`` with ``k >= 1``, else ``None``."""
    support = m.support()
    return support[0] if len(support) == 1 else None


def enumerate_types(m: MonoidElement) -> List[MonoidElement]:
    """
    All divisors of ``m`` other than the identity and ``m`` itself.

    These are the possible types of a basic refinement at a node of
    thickness ``m``. Ordered lexicographically by exponent vector.

    :raises UndefinedTypeError: For the identity.
    """
    if m.is_identity:
        raise UndefinedTypeError("the identity has no types")

    vectors = product(*(range(e + 1) for e in m.vector))

    return [
        MonoidElement(m.alphabet, v)
        for v in vectors
        if any(v) and v != m.vector
    ]


def primitive_root(m: MonoidElement) -> Tuple[MonoidElement, int]:
    """
    Return ``(r, g)`` with ``m = r^g`` and ``g`` maximal.

    ``g`` is the gcd of the exponents of ``m``. Every ``l`` with ``m = l^k``
    is a power of ``r``, so two elements are powers of a common element
    exactly when their primitive roots agree.

    :raises UndefinedRootError: For the identity.
    """
    if m.is_identity:
        raise UndefinedRootError("the identity has no primitive root")

    g = reduce(gcd, m.vector)
    return MonoidElement(m.alphabet, tuple(x // g for x in m.vector)), g


@dataclass(frozen=True)
class MonoidHom:
    """
    A monoid homomorphism given by the image of every source prime.

    An image may be the identity: the prime becomes a unit in the target.

    :param source: Source alphabet.
    :type source: :class:`PrimeAlphabet`
    :param target: Target alphabet.
    :type target: :class:`PrimeAlphabet`
    :param images: Image of every source symbol, in source order.
    :type images: :class:`tuple` of :class:`MonoidElement`

    :raises AlphabetError: If an image is not over ``target`` or the
        assignment is not total.
    """

    source: PrimeAlphabet
    target: PrimeAlphabet
    images: Tuple[MonoidElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))

        if len(self.images) != len(self.source):
            raise AlphabetError("homomorphism must assign an image to every source prime")

        for img in self.images:
            if img.alphabet != self.target:
                raise AlphabetError(
                    f"image {img} is not over the target alphabet {list(self.target)}"
                )

    @classmethod
    def of(
        cls,
        source: PrimeAlphabet,
        target: PrimeAlphabet,
        image: Mapping[str, Mapping[str, int]],
    ) -> MonoidHom:
        missing = [s for s in source if s not in image]

        if missing:
            raise AlphabetError(f"no image given for source primes {missing}")

        unknown = [s for s in image if s not in source]

        if unknown:
            raise AlphabetError(f"image given for unknown primes {unknown}")

        return cls(source, target, tuple(MonoidElement.of(target, image[s]) for s in source))

    @classmethod
    def identity(cls, alphabet: PrimeAlphabet) -> MonoidHom:
        return cls(alphabet, alphabet, tuple(MonoidElement.prime(alphabet, s) for s in alphabet))

    def image(self, sym: str) -> MonoidElement:
        return self.images[self.source.index(sym)]

    def __call__(self, m: MonoidElement) -> MonoidElement:
        return apply_hom(self, m)


def apply_hom(h: MonoidHom, m: MonoidElement) -> MonoidElement:
    """
    Push ``m`` through ``h``: the product of ``h(p)^e`` over the factors ``p^e``.

    :raises AlphabetError: If ``m`` is not over ``h.source``.
    """
    if m.alphabet != h.source:
        raise AlphabetError(
            f"element over {list(m.alphabet)} but homomorphism source is {list(h.source)}"
        )

    result = [0] * len(h.target)

    for exp, img in zip(m.vector, h.images):
        if exp:
            for i, x in enumerate(img.vector):
                result[i] += exp * x

    return MonoidElement(h.target, tuple(result))


def compose(outer: MonoidHom, inner: MonoidHom) -> MonoidHom:
    """
    The composite ``outer ∘ inner``.

    :raises AlphabetError: If ``inner.target`` is not ``outer.source``.
    """
    if inner.target != outer.source:
        raise AlphabetError(
            f"cannot compose: {list(inner.target)} is not {list(outer.source)}"
        )

    return MonoidHom(inner.source, outer.target, tuple(apply_hom(outer, img) for img in inner.images))
