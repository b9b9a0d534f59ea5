from pathlib import Path

import pytest

from bifree.draw import draw_ascii, draw_svg
from bifree.partitions import Partition, zero

GOLDEN = Path(__file__).parent / "golden"
WORKED = Partition([[1, 2], [3, 5, 9], [4, 7], [6, 8]])


def test_ascii_matches_golden_file():
    assert draw_ascii(WORKED, "lrllrrlrr", twisted_panel=True) == (GOLDEN / "worked_example.txt").read_text()


def test_svg_matches_golden_file():
    assert draw_svg(WORKED, "lrllrrlrr", twisted_panel=True) == (GOLDEN / "worked_example.svg").read_text()


def test_worked_example_has_nine_points_and_four_groups():
    svg = draw_svg(WORKED, "lrllrrlrr")
    assert svg.count("<circle") == 9
    # one horizontal bar per non-singleton block
    bars = [l for l in svg.splitlines() if "<line" in l and l.split('y1="')[1].split('"')[0] == l.split('y2="')[1].split('"')[0]]
    assert len(bars) == 4
    labels = draw_ascii(WORKED, "lrllrrlrr").splitlines()
    assert labels[-2].split() == list("lrllrrlrr")


def test_singletons_are_bare_ticks():
    text = draw_ascii(zero(3), "lrl")
    assert "-" not in text and "+" not in text
    assert draw_svg(zero(3), "lrl").count("<line") == 3


def test_output_is_deterministic():
    assert draw_svg(WORKED, "lrllrrlrr", twisted_panel=True) == draw_svg(WORKED, "lrllrrlrr", twisted_panel=True)


def test_size_mismatch():
    with pytest.raises(ValueError):
        draw_ascii(WORKED, "lr")
    with pytest.raises(ValueError):
        draw_svg(WORKED, "lr")
