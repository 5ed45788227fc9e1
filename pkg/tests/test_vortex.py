import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vortexcrypt import (
    Coord,
    FunctionTerm,
    GridShape,
    InvalidKeyError,
    OutOfDiskError,
    RandomFunction,
    VortexKey,
    VortexSpec,
    apply_key,
    band_shift,
    compose,
    decrypt_image,
    encrypt_image,
    eval_angle_offset,
    identity,
    keygen,
    max_band_shear,
    read_key,
    ring_decomposition,
    sample_function,
    vortex_map,
    write_key,
)

TWO_PI = 2.0 * math.pi


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(seed))


def make_spec(center, radius, terms):
    return VortexSpec(Coord(*center), radius, RandomFunction(tuple(terms)))


# published first vortex of the reference set: two trig terms, R=4 at (5,11)
SWIRL_TERMS = (
    FunctionTerm("sin", -1.88, 1.20, 0.95),
    FunctionTerm("cos", 1.17, 0.68, 0.74),
)


# ---------------------------------------------------------------------------
# function terms


def test_term_rejects_unknown_kind():
    with pytest.raises(InvalidKeyError):
        FunctionTerm("tan", 1.0)


def test_term_rejects_bad_degree():
    with pytest.raises(InvalidKeyError):
        FunctionTerm("poly", 1.0, degree=0)
    with pytest.raises(InvalidKeyError):
        FunctionTerm("poly", 1.0, degree=6)


def test_term_rejects_non_finite_amplitude():
    with pytest.raises(InvalidKeyError):
        FunctionTerm("sin", math.inf, 1.0, 0.0)


@pytest.mark.parametrize(
    "term,expected",
    [
        (FunctionTerm("sin", 2.0, 1.5, 0.25), lambda d: 2.0 * math.sin(1.5 * d + 0.25)),
        (FunctionTerm("cos", -1.0, 0.5, 1.0), lambda d: -math.cos(0.5 * d + 1.0)),
        (FunctionTerm("poly", 0.7, degree=3), lambda d: 0.7 * d**3),
        (FunctionTerm("sqrt", 1.1), lambda d: 1.1 * math.sqrt(d)),
        (FunctionTerm("ln1p", 0.4), lambda d: 0.4 * math.log(d + 1.0)),
        (FunctionTerm("log10_1p", 0.9), lambda d: 0.9 * math.log10(d + 1.0)),
        (FunctionTerm("exp", 0.3), lambda d: 0.3 * math.exp(d)),
        (FunctionTerm("exp2d", 0.2), lambda d: 0.2 * math.exp(2.0 * d)),
        (FunctionTerm("pow2", 1.3), lambda d: 1.3 * 2.0**d),
    ],
)
def test_term_families_evaluate_directly(term, expected):
    for d in (0.0, 0.5, 1.5, 3.0):
        assert term.evaluate(d) == pytest.approx(expected(d), rel=1e-14, abs=1e-14)


def test_reference_swirl_function_values():
    f = RandomFunction(SWIRL_TERMS)
    f0 = -1.88 * math.sin(0.95) + 1.17 * math.cos(0.74)
    f1 = -1.88 * math.sin(1.20 + 0.95) + 1.17 * math.cos(0.68 + 0.74)
    assert f(0.0) == pytest.approx(f0, abs=1e-12)
    assert f(1.0) == pytest.approx(f1, abs=1e-12)
    assert f0 == pytest.approx(-0.6652, abs=1e-4)
    assert f1 == pytest.approx(-1.3976, abs=1e-4)


def test_empty_function_is_zero():
    assert RandomFunction(())(2.0) == 0.0


# ---------------------------------------------------------------------------
# angle offsets


def test_angle_offset_vanishes_at_radius():
    spec = make_spec((5, 11), 4, SWIRL_TERMS)
    assert eval_angle_offset(spec, 4.0) == 0.0


def test_angle_offset_zero_function():
    spec = make_spec((5, 5), 3, ())
    for d in (0.0, 1.0, 2.5, 3.0):
        assert eval_angle_offset(spec, d) == 0.0


def test_angle_offset_reference_value():
    spec = make_spec((5, 11), 4, SWIRL_TERMS)
    f1 = -1.88 * math.sin(1.20 + 0.95) + 1.17 * math.cos(0.68 + 0.74)
    expected = ((4.0 - 1.0) * f1) % TWO_PI
    got = eval_angle_offset(spec, 1.0)
    assert got == pytest.approx(expected, abs=1e-12)
    assert got == pytest.approx(2.0904, abs=1e-4)
    assert 0.0 <= got < TWO_PI


def test_angle_offset_outside_disk():
    spec = make_spec((5, 5), 3, SWIRL_TERMS)
    with pytest.raises(OutOfDiskError):
        eval_angle_offset(spec, 3.5)
    with pytest.raises(OutOfDiskError):
        eval_angle_offset(spec, -0.1)


def test_angle_offset_overflow_is_a_key_error():
    spec = make_spec((500, 500), 400, (FunctionTerm("exp2d", 1.0),))
    with pytest.raises(InvalidKeyError):
        eval_angle_offset(spec, 360.0)


# ---------------------------------------------------------------------------
# ring decomposition


def test_unit_ring_members_in_angular_order():
    spec = make_spec((3, 3), 1, ())
    bands = ring_decomposition(spec, GridShape(5, 5))
    assert len(bands) == 1
    band = bands[0]
    assert band.sq_dist == 1
    assert band.members == (Coord(3, 2), Coord(4, 3), Coord(3, 4), Coord(2, 3))


def test_radius_two_band_structure():
    spec = make_spec((3, 3), 2, ())
    bands = ring_decomposition(spec, GridShape(5, 5))
    assert [b.sq_dist for b in bands] == [1, 2, 4]
    assert [len(b.members) for b in bands] == [4, 4, 4]


def test_rings_partition_the_disk():
    shape = GridShape(9, 9)
    spec = make_spec((5, 5), 4, ())
    bands = ring_decomposition(spec, shape)
    seen = set()
    for band in bands:
        for c in band.members:
            assert c not in seen
            seen.add(c)
            assert (c.i - 5) ** 2 + (c.j - 5) ** 2 == band.sq_dist
    outside = {
        Coord(i, j)
        for i in range(1, 10)
        for j in range(1, 10)
        if (i - 5) ** 2 + (j - 5) ** 2 > 16
    }
    assert seen | outside | {Coord(5, 5)} == {Coord(i, j) for i in range(1, 10) for j in range(1, 10)}


def test_ring_members_sorted_by_atan2():
    shape = GridShape(15, 15)
    spec = make_spec((8, 8), 6, ())
    for band in ring_decomposition(spec, shape):
        angles = [math.atan2(c.j - 8, c.i - 8) for c in band.members]
        assert angles == sorted(angles)


# ---------------------------------------------------------------------------
# band shifts


def _unit_band():
    spec = make_spec((3, 3), 1, ())
    return ring_decomposition(spec, GridShape(5, 5))[0]


def test_band_shift_quarter_turn():
    assert band_shift(_unit_band(), math.pi / 2) == 1


def test_band_shift_rounds_half_away_from_zero():
    assert band_shift(_unit_band(), math.pi / 4) == 1


def test_band_shift_zero_angle():
    assert band_shift(_unit_band(), 0.0) == 0


def test_band_shift_wraps_full_turn():
    assert band_shift(_unit_band(), TWO_PI - 1e-9) == 0
    assert band_shift(_unit_band(), TWO_PI + math.pi / 2) == 1


def test_band_shift_negative_angle_reduces():
    assert band_shift(_unit_band(), -math.pi / 2) == 3


# ---------------------------------------------------------------------------
# vortex maps


def test_zero_function_gives_identity_map():
    shape = GridShape(9, 9)
    spec = make_spec((5, 5), 4, ())
    assert vortex_map(spec, shape) == identity(shape)


def test_unit_ring_quarter_turn_cycle():
    # shift the 4-member unit ring by one position: the published example cycle
    band = _unit_band()
    k = band_shift(band, math.pi / 2)
    rotated = {band.members[t]: band.members[(t + k) % 4] for t in range(4)}
    assert rotated[Coord(4, 3)] == Coord(3, 4)
    assert rotated[Coord(3, 4)] == Coord(2, 3)
    assert rotated[Coord(2, 3)] == Coord(3, 2)
    assert rotated[Coord(3, 2)] == Coord(4, 3)


def test_vortex_map_fixes_center_boundary_and_exterior():
    shape = GridShape(7, 7)
    spec = make_spec((4, 4), 2, (FunctionTerm("poly", 1.37, degree=2),))
    pmap = vortex_map(spec, shape)
    assert pmap.map_coord(Coord(4, 4)) == Coord(4, 4)  # center
    assert pmap.map_coord(Coord(6, 4)) == Coord(6, 4)  # on the boundary ring, q = R^2
    assert pmap.map_coord(Coord(7, 7)) == Coord(7, 7)  # outside the disk
    assert pmap.map_coord(Coord(1, 4)) == Coord(1, 4)


def test_vortex_map_moves_only_interior_rings():
    shape = GridShape(9, 9)
    spec = make_spec((5, 5), 3, (FunctionTerm("poly", 1.0, degree=1),))
    pmap = vortex_map(spec, shape)
    for idx in np.nonzero(pmap.forward != np.arange(81))[0]:
        c = Coord(int(idx) % 9 + 1, int(idx) // 9 + 1)
        assert 0 < (c.i - 5) ** 2 + (c.j - 5) ** 2 < 9


@settings(max_examples=50, deadline=None)
@given(st.integers(5, 20), st.integers(5, 20), st.integers(0, 2**32 - 1))
def test_vortex_map_is_always_bijective(cols, rows, seed):
    shape = GridShape(cols, rows)
    rng = rng_for(seed)
    i0 = int(rng.integers(1, cols))
    j0 = int(rng.integers(1, rows))
    limit = min(cols - i0, i0, rows - j0, j0)
    if limit < 1:
        return
    radius = int(rng.integers(1, limit + 1))
    spec = VortexSpec(Coord(i0, j0), radius, sample_function(rng))
    pmap = vortex_map(spec, shape)
    assert sorted(pmap.forward.tolist()) == list(range(shape.num_pixels))


def test_vortex_map_at_grid_edge_disk():
    # radius equals the center's margin: the boundary circle grazes the image
    # edge but only interior rings move, so the map stays in-grid and bijective
    shape = GridShape(9, 9)
    spec = make_spec((2, 5), 2, (FunctionTerm("exp", 1.9),))
    pmap = vortex_map(spec, shape)
    assert sorted(pmap.forward.tolist()) == list(range(81))


def test_spec_validation_rejects_oversized_radius():
    # limit at center (5,11) on 28x28 is min(23, 5, 17, 11) = 5
    with pytest.raises(InvalidKeyError):
        make_spec((5, 11), 6, SWIRL_TERMS).validate_for(GridShape(28, 28))
    make_spec((5, 11), 5, SWIRL_TERMS).validate_for(GridShape(28, 28))


def test_spec_validation_rejects_bad_center_or_radius():
    shape = GridShape(10, 10)
    with pytest.raises(InvalidKeyError):
        make_spec((0, 5), 1, ()).validate_for(shape)
    with pytest.raises(InvalidKeyError):
        make_spec((5, 5), 0, ()).validate_for(shape)


# ---------------------------------------------------------------------------
# sampling and keygen


def test_sample_function_deterministic():
    a = sample_function(rng_for(5))
    b = sample_function(rng_for(5))
    assert a == b


@pytest.mark.parametrize("seed", range(25))
def test_sample_function_well_formed_and_finite(seed):
    f = sample_function(rng_for(seed))
    assert 2 <= len(f.terms) <= 5
    for term in f.terms:
        assert term.kind in (
            "sin", "cos", "poly", "sqrt", "ln1p", "log10_1p", "exp", "exp2d", "pow2",
        )
        assert -2.0 <= term.amplitude <= 2.0
    for d in np.linspace(0.0, 16.0, 33):
        assert math.isfinite(f(float(d)))


def test_keygen_deterministic_and_valid():
    shape = GridShape(28, 28)
    key = keygen(shape, 5, 7)
    assert key == keygen(shape, 5, 7)
    assert len(key.specs) == 5
    for spec in key.specs:
        limit = min(
            shape.cols - spec.center.i, spec.center.i, shape.rows - spec.center.j, spec.center.j
        )
        assert 1 <= spec.radius <= limit
    assert key.digest() != keygen(shape, 5, 8).digest()


def test_keygen_rejects_tiny_grid_and_bad_count():
    with pytest.raises(InvalidKeyError):
        keygen(GridShape(2, 28), 4, 0)
    with pytest.raises(InvalidKeyError):
        keygen(GridShape(28, 2), 4, 0)
    with pytest.raises(InvalidKeyError):
        keygen(GridShape(28, 28), 0, 0)


# ---------------------------------------------------------------------------
# key application


def test_apply_key_empty_is_identity():
    shape = GridShape(8, 8)
    key = VortexKey(shape, (), seed=0)
    assert apply_key(key, shape) == identity(shape)


def test_apply_key_single_spec_equals_vortex_map():
    shape = GridShape(9, 9)
    spec = make_spec((5, 5), 3, SWIRL_TERMS)
    key = VortexKey(shape, (spec,), seed=0)
    assert apply_key(key, shape) == vortex_map(spec, shape)


def test_apply_key_composes_in_list_order():
    shape = GridShape(11, 11)
    s1 = make_spec((4, 4), 3, SWIRL_TERMS)
    s2 = make_spec((7, 7), 3, (FunctionTerm("exp", 1.1),))
    key = VortexKey(shape, (s1, s2), seed=0)
    expected = compose(vortex_map(s2, shape), vortex_map(s1, shape))
    assert apply_key(key, shape) == expected


def test_apply_key_shape_mismatch():
    key = keygen(GridShape(28, 28), 2, 0)
    with pytest.raises(InvalidKeyError):
        apply_key(key, GridShape(32, 32))


def test_max_band_shear_zero_for_zero_function():
    shape = GridShape(9, 9)
    key = VortexKey(shape, (make_spec((5, 5), 4, ()),), seed=0)
    assert max_band_shear(key) == 0.0


def test_max_band_shear_bounded_and_finite():
    key = keygen(GridShape(28, 28), 5, 3)
    shear = max_band_shear(key)
    assert 0.0 <= shear <= math.pi


# ---------------------------------------------------------------------------
# encryption round trips


def test_constant_image_unchanged():
    key = keygen(GridShape(16, 16), 4, 2)
    img = np.full((16, 16), 77, dtype=np.uint8)
    assert np.array_equal(encrypt_image(img, key), img)


def test_single_delta_lands_on_mapped_position():
    shape = GridShape(12, 12)
    key = keygen(shape, 3, 5)
    pmap = apply_key(key, shape)
    img = np.zeros((12, 12), dtype=np.uint8)
    img[4, 9] = 200  # Coord(10, 5)
    out = encrypt_image(img, key)
    target = pmap.map_coord(Coord(10, 5))
    assert out[target.j - 1, target.i - 1] == 200
    assert out.sum() == 200


@pytest.mark.parametrize("channels", [1, 3])
def test_encrypt_decrypt_round_trip(channels):
    shape = GridShape(20, 20)
    key = keygen(shape, 5, 9)
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=(channels, 20, 20), dtype=np.uint8)
    enc = encrypt_image(img, key)
    assert not np.array_equal(enc, img)
    assert np.array_equal(decrypt_image(enc, key), img)


def test_encrypt_shape_mismatch():
    key = keygen(GridShape(16, 16), 2, 0)
    with pytest.raises(InvalidKeyError):
        encrypt_image(np.zeros((8, 8), dtype=np.uint8), key)


# ---------------------------------------------------------------------------
# key files


def test_key_json_round_trip(tmp_path):
    key = keygen(GridShape(28, 28), 5, 13)
    path = tmp_path / "key.json"
    write_key(key, path)
    loaded = read_key(path)
    assert loaded == key
    assert loaded.digest() == key.digest()
    # a canonical file digests to the key digest
    import hashlib

    assert hashlib.sha256(path.read_bytes()).hexdigest() == key.digest()


def test_key_json_field_order_is_canonical(tmp_path):
    key = keygen(GridShape(16, 16), 2, 1)
    doc = json.loads(key.canonical_bytes())
    assert list(doc) == ["format_version", "shape", "seed", "specs"]
    assert list(doc["specs"][0]) == ["center", "radius", "terms"]


def test_key_rejects_malformed_documents():
    good = keygen(GridShape(16, 16), 2, 1).to_dict()

    missing = dict(good)
    del missing["seed"]
    with pytest.raises(InvalidKeyError):
        VortexKey.from_dict(missing)

    bad_version = dict(good, format_version=99)
    with pytest.raises(InvalidKeyError):
        VortexKey.from_dict(bad_version)

    bad_kind = json.loads(json.dumps(good))
    bad_kind["specs"][0]["terms"][0]["kind"] = "banana"
    with pytest.raises(InvalidKeyError):
        VortexKey.from_dict(bad_kind)

    bad_radius = json.loads(json.dumps(good))
    bad_radius["specs"][0]["radius"] = 99
    with pytest.raises(InvalidKeyError):
        VortexKey.from_dict(bad_radius)


def test_read_key_rejects_garbage(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InvalidKeyError):
        read_key(path)


def test_fixture_keys_load_and_validate(fixture_key_paths):
    spec_counts = []
    for path in fixture_key_paths:
        key = read_key(path)
        assert key.shape == GridShape(28, 28)
        key.validate()
        spec_counts.append(len(key.specs))
        pmap = apply_key(key, key.shape)
        assert sorted(pmap.forward.tolist()) == list(range(784))
    assert spec_counts == [5, 4, 5]
