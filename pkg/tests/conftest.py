import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import gradekit.algebras as al
import gradekit.cohomology as coh
import gradekit.fields as ff
import gradekit.groups as gr


@pytest.fixture(scope="session")
def F3():
    return ff.make_field(3)


@pytest.fixture(scope="session")
def F5():
    return ff.make_field(5)


@pytest.fixture(scope="session")
def F7():
    return ff.make_field(7)


@pytest.fixture(scope="session")
def F9():
    return ff.make_field(3, 2)


@pytest.fixture(scope="session")
def Z2():
    return gr.cyclic(2)


@pytest.fixture(scope="session")
def Z4():
    return gr.cyclic(4)


@pytest.fixture(scope="session")
def K4():
    return gr.klein4()


@pytest.fixture(scope="session")
def S3():
    return gr.symmetric3()


@pytest.fixture(scope="session")
def Q8():
    return gr.quaternion8()


@pytest.fixture(scope="session")
def pauli(F5):
    return coh.klein4_pauli(F5)


@pytest.fixture(scope="session")
def q8k4(F5, Q8, K4):
    """The quotient-graded group algebra of Q8 over K4 plus the sign module.

    The grading is transported onto the canonical klein4 group so other
    klein4 data (the standard anticommuting cocycle, H^2 classes) composes
    with it directly.  "M" is the sign character of the center.
    """
    FQ8 = al.group_algebra(Q8, F5)
    A0, _ = al.quotient_grading(FQ8, [0, 1])
    iso = gr.iso_search(A0.group, K4)
    A = al.transport_grading(A0, iso)
    Ae, idx = al.base_algebra(A)
    minus = ff.neg(F5, 1)
    M = al.make_ungraded_module(Ae, [[[1]], [[minus]]])
    Mtriv = al.make_ungraded_module(Ae, [[[1]], [[1]]])
    return {"A": A, "Araw": A0, "M": M, "Mtriv": Mtriv, "Ae": Ae, "base_idx": idx}


@pytest.fixture(scope="session")
def m2_z2(F5, Z2):
    """M_2(GF(5)) with the elementary grading over Z2 (degrees e, x)."""
    return al.elementary_matrix_algebra(2, F5, Z2, [0, 1])
