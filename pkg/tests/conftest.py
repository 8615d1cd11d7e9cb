import functools
import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from poisson_coact import fixtures  # noqa: E402
from poisson_coact.universal import build_universal  # noqa: E402

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

# acceptance lines collected by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def built(p_name, u_name=None, degree=3, margin=2):
    """Session-wide cache of presentations; names index ``fixtures.STANDARD``."""
    P = ALGEBRAS[p_name]()
    U = ALGEBRAS[u_name or p_name]()
    return build_universal(P, U, degree, margin)


ALGEBRAS = dict(fixtures.STANDARD, square_zero_abelian=fixtures.square_zero_abelian)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
