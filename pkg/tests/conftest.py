import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def sunny():
    from shiftdrift.gallery import sunny_side_up

    return sunny_side_up()


@pytest.fixture(scope="session")
def s_squared():
    from shiftdrift.gallery import s_squared

    return s_squared()


@pytest.fixture(scope="session")
def p_times_s():
    from shiftdrift.gallery import period_two_orbit, product_with_s

    return product_with_s(period_two_orbit())


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for n, m in sys.modules.items() if n.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
