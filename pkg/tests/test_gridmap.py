import io
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dubcover.gridmap import (GridMeta, InvalidMetaError, InvalidResolutionError,
                              MalformedHeaderError, OccupancyGrid, Point, TruncatedPayloadError,
                              free_area, load_grid, read_grid)

META = GridMeta(1.0, Point(0.0, 0.0))


def p2(values, maxval=255):
    h, w = len(values), len(values[0])
    body = "\n".join(" ".join(str(v) for v in row) for row in values)
    return f"P2\n# a comment\n{w} {h}\n{maxval}\n{body}\n".encode()


def test_p2_all_white_and_black():
    assert load_grid(p2([[255] * 3] * 3), META).free_count() == 9
    assert load_grid(p2([[0] * 3] * 3), META).free_count() == 0


def test_p5_truncated():
    data = b"P5\n4 4\n255\n" + bytes(15)
    with pytest.raises(TruncatedPayloadError):
        load_grid(data, META)


def test_p5_parse_and_orientation():
    raw = np.array([[255, 0, 255], [0, 0, 255]], dtype=np.uint8)
    g = load_grid(b"P5 3 2 255\n" + raw.tobytes(), META)
    assert g.free.tolist() == [[True, False, True], [False, False, True]]
    # row 0 is the top of the map
    assert g.is_free_at(0.5, 1.5) and not g.is_free_at(0.5, 0.5)


def test_p5_sixteen_bit():
    raw = np.array([[65535, 0]], dtype=">u2")
    g = load_grid(b"P5\n2 1\n65535\n" + raw.tobytes(), META)
    assert g.free.tolist() == [[True, False]]


def test_threshold_inclusive():
    g = load_grid(p2([[127, 128, 129]]), META)
    assert g.free.tolist() == [[False, True, True]]
    g = load_grid(p2([[127, 128, 129]]), GridMeta(1.0, Point(0, 0), free_threshold=129))
    assert g.free.tolist() == [[False, False, True]]


@pytest.mark.parametrize("data", [b"P2\n3\n", b"P2\nx 3 255\n", b"P2\n0 3 255\n", b"P2\n1 1 0\n0",
                                  b"P7\n1 1 255\n0", b"P2\n2 1 255\n0 300\n"])
def test_malformed_header(data):
    with pytest.raises(MalformedHeaderError):
        load_grid(data, META)


def test_ascii_grid():
    g = load_grid(io.BytesIO(b"..#\n#..\n"), META)
    assert g.free.tolist() == [[True, True, False], [False, True, True]]
    with pytest.raises(TruncatedPayloadError):
        load_grid(b"..#\n#.\n", META)
    with pytest.raises(MalformedHeaderError):
        load_grid(b"..x\n", META)


def test_meta_errors():
    with pytest.raises(InvalidResolutionError):
        GridMeta(0.0, Point(0, 0))
    with pytest.raises(InvalidResolutionError):
        GridMeta.from_dict({"resolution_m": -1, "depot": [0, 0]})
    with pytest.raises(InvalidMetaError):
        GridMeta.from_dict({"depot": [0, 0]})
    with pytest.raises(InvalidMetaError):
        GridMeta(1.0, Point(float("nan"), 0))
    with pytest.raises(InvalidMetaError):
        GridMeta(1.0, Point(0, 0), free_threshold=300)


def test_error_classes_distinct():
    names = {MalformedHeaderError, TruncatedPayloadError, InvalidResolutionError}
    assert len(names) == 3
    assert all(issubclass(e, ValueError) for e in names)


def test_free_area_examples():
    free = np.zeros((10, 10), dtype=bool)
    free.flat[:60] = True
    assert free_area(OccupancyGrid(free, 2.0)) == 240.0
    assert free_area(OccupancyGrid(np.zeros((4, 4), bool), 1.0)) == 0.0
    assert free_area(OccupancyGrid(np.ones((200, 200), bool), 1.0)) == 40000.0


def test_pixel_center_convention():
    g = OccupancyGrid(np.ones((4, 3), bool), 2.0)
    assert g.pixel_center(0, 0) == (1.0, 7.0)
    assert g.pixel_center(2, 3) == (5.0, 1.0)
    xs, ys = g.pixel_centers()
    assert xs[3, 2] == 5.0 and ys[3, 2] == 1.0
    assert g.columns.shape == (3, 4)


def test_grid_is_immutable():
    g = OccupancyGrid(np.ones((2, 2), bool), 1.0)
    with pytest.raises(ValueError):
        g.free[0, 0] = False


def test_read_grid_files(tmp_path):
    (tmp_path / "m.pgm").write_bytes(p2([[255, 0], [255, 255]]))
    (tmp_path / "m.json").write_text(json.dumps({"resolution_m": 0.5, "depot": [1, 2]}))
    g = read_grid(tmp_path / "m.pgm", tmp_path / "m.json")
    assert g.free_count() == 3 and g.resolution == 0.5 and g.depot == (1.0, 2.0)
    (tmp_path / "bad.json").write_text("{nope")
    with pytest.raises(InvalidMetaError):
        read_grid(tmp_path / "m.pgm", tmp_path / "bad.json")


@given(arrays(bool, st.tuples(st.integers(1, 12), st.integers(1, 12))),
       st.floats(0.1, 5.0))
def test_pgm_round_trip(free, res):
    g = OccupancyGrid(free, res)
    back = load_grid(g.to_pgm(), GridMeta(res, Point(0, 0)))
    assert np.array_equal(back.free, free)
    assert 0.0 <= free_area(back) <= free.size * res**2 + 1e-9
    asc = load_grid(g.to_ascii().encode(), GridMeta(res, Point(0, 0)))
    assert np.array_equal(asc.free, free)
