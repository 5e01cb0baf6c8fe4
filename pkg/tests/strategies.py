"""Shared hypothesis strategies and signature lists."""

from hypothesis import strategies as st

from cliffgroups.multivector import Multivector, Signature


def signatures(max_n: int, min_n: int = 0):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(0, n).map(lambda p: Signature(p, n - p))
    )


small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@st.composite
def multivectors(draw, sig: Signature, max_terms: int = 5):
    masks = draw(st.lists(st.integers(0, (1 << sig.n) - 1), max_size=max_terms))
    return Multivector(sig, {m: draw(small_fractions) for m in masks})


@st.composite
def signed_multivectors(draw, max_n: int = 6, count: int = 2, max_terms: int = 5):
    sig = draw(signatures(max_n))
    return (sig, *[draw(multivectors(sig, max_terms)) for _ in range(count)])


def all_signatures(max_n: int, min_n: int = 0):
    return [Signature(p, n - p) for n in range(min_n, max_n + 1) for p in range(n + 1)]
