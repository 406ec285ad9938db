import math

import pytest

from voxcurve import CylCurveParams, cylinder_curve


@pytest.fixture
def test_params():
    """Reference curve at H=128 with its native offsets (z reaches 130)."""
    return CylCurveParams(R=40, A=40, omega=2, x0=50, y0=50, z0=50, phi_min=-10, phi_max=10)


@pytest.fixture
def test_curve(test_params):
    return cylinder_curve(test_params)


def make_curve(omega=2.0, A=40.0, phi_min=-math.pi, phi_max=math.pi, z0=24.0):
    return cylinder_curve(CylCurveParams(R=40, A=A, omega=omega, x0=50, y0=50, z0=z0,
                                         phi_min=phi_min, phi_max=phi_max))
