
from hypothesis import strategies as st

from ellqm.series import BiSeries, QSeries


def count_partitions_naive(n, largest=None):
    """Partitions of n by plain recursion (independent of the library)."""
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(count_partitions_naive(n - k, k) for k in range(1, min(n, largest) + 1))


PARTITION_NUMBERS = [count_partitions_naive(n) for n in range(31)]


def naive_convolve(a, b, N):
    """Truncated product of two coefficient lists by the double sum."""
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(N + 1)]


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def qseries(draw, order2=8, integer_grid=False):
    step = 2 if integer_grid else 1
    exps = range(0, order2 + 1, step)
    coeffs = {e: draw(small_fractions) for e in exps if draw(st.booleans())}
    return QSeries(coeffs, order2)


@st.composite
def biseries(draw, lambda_order=3, order2=6, constant=None):
    terms = [draw(qseries(order2)) for _ in range(lambda_order + 1)]
    b = BiSeries(terms, lambda_order, order2)
    if constant is not None:
        b = b - b.constant_term() + constant
    return b


# acceptance lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
