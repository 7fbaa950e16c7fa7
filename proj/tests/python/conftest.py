import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--framebound-cli",
        action="store",
        default=None,
        help="path to the framebound CLI binary",
    )


@pytest.fixture(scope="session")
def cli_path(request):
    path = request.config.getoption("--framebound-cli")
    if not path:
        pytest.skip("--framebound-cli not provided")
    return path
