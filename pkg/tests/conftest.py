import pytest

from confbetti import catalog, catalog_names

EVEN = [n for n in catalog_names() if catalog(n).d % 2 == 0]
ODD = [n for n in catalog_names() if catalog(n).d % 2 == 1]


@pytest.fixture(params=catalog_names())
def any_model(request):
    return catalog(request.param)


@pytest.fixture(params=EVEN)
def even_model(request):
    return catalog(request.param)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(test_acceptance.RESULTS):
        ok, title = test_acceptance.RESULTS[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num:>2}: {title}")
