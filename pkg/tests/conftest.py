import numpy as np
import pytest

from supjcir.jumps import ExponentialJump, NoJumps, TemperedStable
from supjcir.mixing import DiscreteMixing, GammaMixing
from supjcir.process import SupJcirModel


def synthetic_series(theta, omega, mean, variance, n=2**16, step=7.0, seed=1):
    """Series whose circular sample ACF is exactly (1 + theta h)^-(omega - 1).

    Random phases on the exact spectrum of the circulant-embedded ACF, then
    an affine map to the target mean and variance (both exact).
    """
    j = np.arange(n)
    lag = np.minimum(j, n - j) * step
    spec = np.maximum(np.fft.fft((1.0 + theta * lag) ** (-(omega - 1.0))).real, 0.0)
    phases = np.exp(2j * np.pi * np.random.default_rng(seed).random(n))
    X = np.sqrt(n * spec) * phases
    X[0] = 0.0
    X[n // 2 + 1:] = np.conj(X[1:n // 2][::-1])
    X[n // 2] = abs(X[n // 2])
    x = np.fft.ifft(X).real
    x = (x - x.mean()) / x.std()
    return j * step, mean + np.sqrt(variance) * x


def write_csv(path, days, values):
    with open(path, "w") as fh:
        fh.write("# synthetic\nday,value\n")
        for d, v in zip(days, values):
            fh.write(f"{float(d)!r},{float(v)!r}\n")


@pytest.fixture
def exp_model():
    return SupJcirModel(1.0, 0.5, ExponentialJump(1.0, 2.0), GammaMixing(2.0, 0.5))


@pytest.fixture
def tempered_model():
    return SupJcirModel(1.0, 0.5, TemperedStable(0.4, 3.0, 0.5), GammaMixing(2.5, 0.2))


@pytest.fixture
def discrete_model():
    return SupJcirModel(1.0, 0.5, ExponentialJump(1.0, 5.0), DiscreteMixing((0.3, 0.7), (0.2, 1.0)))


@pytest.fixture
def cir_model():
    return SupJcirModel(1.3, 0.8, NoJumps(), GammaMixing(2.5, 0.3))


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
