from __future__ import annotations

import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "genring", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("genring")


def nonzero_rationals(max_value: int = 10**6):
    num = st.integers(-max_value, max_value).filter(bool)
    den = st.integers(1, max_value)
    return st.builds(Fraction, num, den)


def trial_factor(n: int) -> dict[int, int]:
    """Plain trial division, kept independent of the library's factoring."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
