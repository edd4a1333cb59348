from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from manycolours.multigraph import Multigraph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def multigraphs(draw, min_n=1, max_n=6, max_m=9, connected=False):
    """Loopless multigraphs; with ``connected`` a spanning path-like tree is laid first."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    if connected:
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    if n >= 2:
        # second endpoint as a nonzero offset, so no loop is ever drawn
        pair = st.tuples(st.integers(0, n - 1), st.integers(1, n - 1)).map(lambda t: (t[0], (t[0] + t[1]) % n))
        room = max(0, max_m - len(edges))
        edges += draw(st.lists(pair, max_size=room))
    return Multigraph(n, tuple(edges))


def mg(n, *pairs):
    return Multigraph(n, tuple(pairs))
