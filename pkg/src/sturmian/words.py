"""Finite binary words: standard and semistandard words, primitivity, conjugacy.

Words are plain Python strings over the alphabet {'0', '1'}; equality is
letterwise and no compression is attempted.  The standard sequence of a
slope follows s_{-1} = 1, s_0 = 0, s_1 = 0^(a_1 - 1) 1 and
s_k = s_{k-1}^(a_k) s_{k-2}; semistandard words replace the final exponent
a_k by any l with 0 < l < a_k.
"""

from __future__ import annotations

from sturmian.exactnum import ContinuedFraction

Word = str


def check_word(w: str) -> str:
    if any(c not in "01" for c in w):
        raise ValueError(f"word must be over the alphabet {{0,1}}, got {w!r}")
    return w


def standard_word(cf: ContinuedFraction, k: int) -> str:
    """The k-th standard word s_k, k >= -1; |s_k| = q_k for k >= 0."""
    if k < -1:
        raise ValueError(f"standard word index must be >= -1, got {k}")
    prev, cur = "1", "0"  # s_{-1}, s_0
    if k == -1:
        return prev
    for j in range(1, k + 1):
        a = cf.quotient(j)
        exponent = a - 1 if j == 1 else a
        prev, cur = cur, cur * exponent + prev
    return cur


def semistandard_word(cf: ContinuedFraction, k: int, l: int) -> str:
    """The semistandard word s_{k,l} = s_{k-1}^l s_{k-2}, k >= 2, 0 < l < a_k."""
    if k < 2:
        raise ValueError(f"semistandard index k must be >= 2, got {k}")
    a_k = cf.quotient(k)
    if not 0 < l < a_k:
        raise ValueError(f"semistandard offset must satisfy 0 < l < a_{k} = {a_k}, got {l}")
    return standard_word(cf, k - 1) * l + standard_word(cf, k - 2)


def standard_or_semistandard(cf: ContinuedFraction, k: int, l: int) -> str:
    """s_{k,l} for 0 < l < a_k, and s_k itself for l = a_k."""
    if l == cf.quotient(k):
        return standard_word(cf, k)
    return semistandard_word(cf, k, l)


def is_primitive(w: str) -> bool:
    """True iff w occurs exactly twice as a factor of w*w."""
    check_word(w)
    if not w:
        raise ValueError("primitivity is undefined for the empty word")
    return (w + w).find(w, 1) == len(w)


def cyclic_shift(w: str, i: int) -> str:
    """C^i(w), where C moves the last letter to the front."""
    if not 0 <= i < len(w):
        raise ValueError(f"shift index must satisfy 0 <= i < {len(w)}, got {i}")
    if i == 0:
        return w
    return w[-i:] + w[:-i]


def conjugates(w: str) -> list[str]:
    """All cyclic shifts C^0(w)..C^(|w|-1)(w) in order, duplicates included."""
    return [cyclic_shift(w, i) for i in range(len(w))]


def reversal(w: str) -> str:
    return w[::-1]


def near_commutation_check(cf: ContinuedFraction, k: int) -> bool:
    """Whether s_k s_{k-1} and s_{k-1} s_k agree except for swapped final letters."""
    if k < 2:
        raise ValueError(f"near-commutation check needs k >= 2, got {k}")
    u = standard_word(cf, k) + standard_word(cf, k - 1)
    v = standard_word(cf, k - 1) + standard_word(cf, k)
    return u[:-2] == v[:-2] and u[-2:] == v[-2:][::-1] and u[-1] != u[-2]
