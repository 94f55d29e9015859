import pytest

from mpkcheck.core.presentations.assignment import GenAssignment
from mpkcheck.core.presentations.checks import square_commutes
from mpkcheck.core.presentations.diagrams import (
    DIAGRAMS,
    ballpullback,
    ballpullback_report,
    check_diagram,
    mpull_t,
)
from mpkcheck.core.presentations.free import S
from mpkcheck.core.presentations.maps import build_map
from mpkcheck.utils.error import SignatureMismatch, UnsupportedIndex


@pytest.mark.parametrize("name", sorted(DIAGRAMS))
@pytest.mark.parametrize("n", [1, 2])
def test_square_commutes(name, n):
    report = check_diagram(DIAGRAMS[name](n), name, n=n)
    assert report.status == "pass", report.witness
    assert report.parameters["diagram"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ballpullback_with_sink_edges(n):
    report = ballpullback_report(n)
    assert report.status == "pass", report.witness
    assert report.metadata["relations_checked"] > n


def test_sink_edges_vanish_under_sigma():
    square = ballpullback(3)
    assert square.right(square.top(S(0, 3))).is_zero


@pytest.mark.parametrize("k", [0, 1])
def test_mpull_tensored_with_toeplitz(k):
    report = check_diagram(mpull_t(1, k), "mpull_t", k=k)
    assert report.status == "pass", report.witness


def test_diagrams_need_positive_n():
    with pytest.raises(UnsupportedIndex):
        DIAGRAMS["face1"](0)


def test_broken_square_is_rejected():
    rho, sigma = build_map("rho", 1), build_map("sigma", 1)
    with pytest.raises(SignatureMismatch):
        square_commutes(rho, sigma, rho, sigma)


def test_wrong_bottom_map_fails():
    square = ballpullback(2)
    omega = square.bottom
    images = dict(omega.images)
    images[S(0, 0)] = images[S(0, 1)]
    bad = GenAssignment("bad", omega.domain, omega.target, images)
    report = square_commutes(square.top, square.right, square.left, bad)
    assert report.status == "fail"
    assert report.witness["generator"] == "S_e00"
