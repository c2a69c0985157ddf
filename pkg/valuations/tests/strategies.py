"""
Hypothesis strategies for clusters, curve germs, monomial ideals and weights.
"""

from fractions import Fraction

from hypothesis import strategies as st

from valuations.cluster import Cluster
from valuations.polyhedra import MonomialIdeal


@st.composite
def clusters(draw, max_points=7):
    """Each point is free on the last divisor, or the satellite point on it and an earlier one."""
    n = draw(st.integers(min_value=1, max_value=max_points))
    lists = [[]]
    for i in range(2, n + 1):
        others = sorted(lists[-1])
        if others and draw(st.booleans()):
            lists.append([i - 1, draw(st.sampled_from(others))])
        else:
            lists.append([i - 1])
    return Cluster.from_lists(lists)


@st.composite
def germs(draw, cluster):
    """Multiplicities satisfying the proximity inequalities."""
    mults = [0] * cluster.n
    for i in range(cluster.n, 0, -1):
        load = sum(mults[k - 1] for k in cluster.points_proximate_to(i))
        mults[i - 1] = load + draw(st.integers(min_value=0, max_value=2))
    return tuple(mults)


@st.composite
def clusters_with_germs(draw, max_points=7):
    cluster = draw(clusters(max_points))
    return cluster, draw(germs(cluster))


def exponents(c, max_exponent=4):
    return st.tuples(*[st.integers(min_value=0, max_value=max_exponent)] * c).filter(any)


def ideals(c, max_gens=6, max_exponent=4):
    return st.lists(exponents(c, max_exponent), min_size=1, max_size=max_gens).map(MonomialIdeal.of)


positive_rationals = st.fractions(min_value=Fraction(1, 6), max_value=6, max_denominator=6).filter(
    lambda x: x > 0
)


def weights(c=2):
    return st.tuples(*[positive_rationals] * c)
