import math

import pytest

from moserbranch.svg import render_branch_svg


def test_render_basic_structure():
    alphas = [0.1, 0.5, 1.0, 2.0]
    lambdas = [5.7, 5.0, 3.4, 0.9]
    Lambdas = [0.05, 1.2, 4.1, 9.9]
    text = render_branch_svg(alphas, lambdas, Lambdas)
    assert text.startswith("<svg")
    assert text.rstrip().endswith("</svg>")
    assert text.count("<polyline") == 2  # one curve per panel
    assert "4&#960;" in text


def test_render_includes_8pi_when_in_range():
    alphas = [1.0, 2.0, 3.0]
    lambdas = [3.0, 2.0, 1.0]
    Lambdas = [5.0, 15.0, 24.0]  # near 8 pi
    text = render_branch_svg(alphas, lambdas, Lambdas)
    assert "8&#960;" in text


def test_render_deterministic():
    args = ([0.1, 1.0], [5.0, 3.0], [0.1, 4.0])
    assert render_branch_svg(*args) == render_branch_svg(*args)


def test_render_rejects_empty():
    with pytest.raises(ValueError):
        render_branch_svg([], [], [])
