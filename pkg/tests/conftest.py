import random

import pytest

import logacm as L


@pytest.fixture
def rng():
    return random.Random(20240811)


def catalog_surfaces():
    return [
        L.projective_space(2),
        L.quadric_surface(),
        L.hirzebruch(0),
        L.hirzebruch(1),
        L.hirzebruch(2),
        L.hirzebruch(3),
        L.blowup_p2(1),
        L.blowup_p2(2),
        L.blowup_p2(3),
        L.blowup_p2(4),
        L.surface_in_p3(2),
        L.surface_in_p3(3),
        L.surface_in_p3(4),
        L.abelian_surface(2),
        L.abelian_surface(4),
    ]


def random_class(rng, x, bound=5):
    return tuple(rng.randint(-bound, bound) for _ in range(x.lattice_rank))
