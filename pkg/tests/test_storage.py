import io
import json
import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gegenrl import apply, build_fsgim, load_fsgim, make_grid, sample, save_fsgim, sgirv_weights
from gegenrl.exceptions import ChecksumError, FormatError
from gegenrl.storage import MAGIC, SCHEMA_VERSION, dumps_fsgim, loads_fsgim


@pytest.fixture(scope="module")
def fsgim():
    return build_fsgim(make_grid(6, -0.25), sgirv_weights(9, 1.0), 0.37, np.linspace(0, 1, 17))


def split(blob):
    (size,) = struct.unpack("<I", blob[8:12])
    return json.loads(blob[12:12 + size]), blob[12 + size:]


def join(header, payload):
    head = json.dumps(header).encode()
    return MAGIC + struct.pack("<I", len(head)) + head + payload


class TestRoundTrip:
    def test_path(self, fsgim, tmp_path):
        path = tmp_path / "m.fsgim"
        save_fsgim(fsgim, path)
        back = load_fsgim(path)
        assert back == fsgim
        for name in ("points", "grid_nodes", "quad_nodes", "quad_weights", "generator", "scaled"):
            assert getattr(back, name).tobytes() == getattr(fsgim, name).tobytes()
        assert back.meta == fsgim.meta and back.alpha == fsgim.alpha

    def test_file_object(self, fsgim):
        buf = io.BytesIO()
        save_fsgim(fsgim, buf)
        buf.seek(0)
        assert load_fsgim(buf) == fsgim

    def test_loaded_matrix_applies_identically(self, fsgim):
        back = loads_fsgim(dumps_fsgim(fsgim))
        s = sample(np.cos, make_grid(6, -0.25))
        np.testing.assert_array_equal(apply(back, s), apply(fsgim, s))

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(0, 15), lam=st.floats(-0.45, 2.0), alpha=st.floats(0.01, 0.99),
           m=st.integers(1, 30))
    def test_property(self, n, lam, alpha, m):
        F = build_fsgim(make_grid(n, lam), sgirv_weights(n + 2, 0.5), alpha, np.linspace(0, 1, m))
        assert loads_fsgim(dumps_fsgim(F)) == F


class TestLayout:
    def test_header_fields(self, fsgim):
        blob = dumps_fsgim(fsgim)
        assert blob[:8] == MAGIC
        header, payload = split(blob)
        assert header["schema_version"] == SCHEMA_VERSION
        assert header["M"] == 16 and header["n"] == 6 and header["n_q"] == 9
        assert header["payload_bytes"] == len(payload)
        # payload holds six little-endian float64 arrays back to back
        points = np.frombuffer(payload[:17 * 8], dtype="<f8")
        np.testing.assert_array_equal(points, fsgim.points)


class TestCorruption:
    def test_every_truncation_is_detected(self, fsgim):
        blob = dumps_fsgim(fsgim)
        for cut in list(range(1, 40)) + list(range(40, len(blob), 97)) + [len(blob) - 1]:
            with pytest.raises(ChecksumError):
                loads_fsgim(blob[:cut])

    def test_flipped_payload_byte(self, fsgim):
        blob = bytearray(dumps_fsgim(fsgim))
        blob[-20] ^= 0x01
        with pytest.raises(ChecksumError):
            loads_fsgim(bytes(blob))

    def test_schema_mismatch(self, fsgim):
        header, payload = split(dumps_fsgim(fsgim))
        header["schema_version"] = SCHEMA_VERSION + 1
        with pytest.raises(FormatError, match="schema_version"):
            loads_fsgim(join(header, payload))

    def test_missing_field(self, fsgim):
        header, payload = split(dumps_fsgim(fsgim))
        del header["checksum"]
        with pytest.raises(FormatError):
            loads_fsgim(join(header, payload))

    def test_bad_magic(self):
        with pytest.raises(FormatError):
            loads_fsgim(b"PK\x03\x04" + b"\x00" * 40)
        with pytest.raises(FormatError):
            loads_fsgim(b"")

    def test_trailing_bytes(self, fsgim):
        with pytest.raises(FormatError):
            loads_fsgim(dumps_fsgim(fsgim) + b"\x00")

    def test_checksum_error_is_format_error(self):
        assert issubclass(ChecksumError, FormatError)
