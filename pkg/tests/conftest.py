from __future__ import annotations

from hypothesis import strategies as st

from ncteach import ConceptClass


@st.composite
def concept_classes(draw, max_n: int = 5, max_m: int = 12) -> ConceptClass:
    """Random small classes; concept order is arbitrary, not sorted."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    limit = 1 << n
    m = draw(st.integers(min_value=1, max_value=min(max_m, limit)))
    words = draw(
        st.lists(
            st.integers(min_value=0, max_value=limit - 1),
            min_size=m,
            max_size=m,
            unique=True,
        )
    )
    return ConceptClass(n=n, words=tuple(words))
