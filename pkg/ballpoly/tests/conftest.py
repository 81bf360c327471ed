import os

import django
import numpy as np
import pytest

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "spindle_lab.settings")
django.setup()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture()
def unit_tetrahedron():
    """Regular tetrahedron with unit edges."""
    from ballpoly.core import regular_simplex
    return regular_simplex(3, circumradius=np.sqrt(3.0 / 8.0))


@pytest.fixture()
def reuleaux_centers():
    """Vertices of a unit equilateral triangle; B[X] is a Reuleaux triangle."""
    return np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])
