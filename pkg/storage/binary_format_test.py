"""Tests for the binary_format module."""
# pylint: disable=missing-docstring

import os
import tempfile
import unittest

import numpy as np

from errors import ChecksumError
from errors import FormatError
from errors import VersionError
from storage.binary_format import BinaryReader
from storage.binary_format import BinaryWriter


def _sample_writer(magic="BDTEST/1"):
    writer = BinaryWriter(magic)
    writer.write_uint32(7)
    writer.write_int64(-3)
    writer.write_float64(0.1)
    writer.write_string(u"café")
    writer.write_optional_string(None)
    writer.write_json({"b": 2, "a": [1]})
    writer.write_float64_array(np.array([1.5, -2.25]))
    writer.write_int64_array([4, 5, 6])
    return writer


class TestBinaryFormat(unittest.TestCase):
    """Tests for BinaryWriter and BinaryReader."""

    def test_reads_back_written_values(self):
        reader = BinaryReader(_sample_writer().to_bytes(), "BDTEST/1")
        self.assertEqual(reader.read_uint32(), 7)
        self.assertEqual(reader.read_int64(), -3)
        self.assertEqual(reader.read_float64(), 0.1)
        self.assertEqual(reader.read_string(), u"café")
        self.assertIsNone(reader.read_optional_string())
        self.assertEqual(reader.read_json(), {"a": [1], "b": 2})
        np.testing.assert_array_equal(reader.read_float64_array(),
                                      [1.5, -2.25])
        np.testing.assert_array_equal(reader.read_int64_array(), [4, 5, 6])
        reader.finish()

    def test_identical_payloads_identical_bytes(self):
        self.assertEqual(_sample_writer().to_bytes(),
                         _sample_writer().to_bytes())

    def test_truncated_is_checksum_error(self):
        data = _sample_writer().to_bytes()
        with self.assertRaises(ChecksumError):
            BinaryReader(data[:-5], "BDTEST/1")

    def test_truncated_at_every_length_is_checksum_error(self):
        data = _sample_writer().to_bytes()
        for length in range(len(data)):
            with self.assertRaises(ChecksumError):
                BinaryReader(data[:length], "BDTEST/1")

    def test_headerless_file_is_format_error(self):
        with self.assertRaises(FormatError) as context:
            BinaryReader(b"id,description", "BDTEST/1")
        self.assertNotIsInstance(context.exception, ChecksumError)

    def test_flipped_byte_is_checksum_error(self):
        data = bytearray(_sample_writer().to_bytes())
        data[12] ^= 0xff
        with self.assertRaises(ChecksumError):
            BinaryReader(bytes(data), "BDTEST/1")

    def test_other_version_names_both(self):
        data = _sample_writer("BDTEST/9").to_bytes()
        with self.assertRaises(VersionError) as context:
            BinaryReader(data, "BDTEST/1")
        self.assertIn("BDTEST/9", str(context.exception))
        self.assertIn("BDTEST/1", str(context.exception))

    def test_other_family_is_format_error(self):
        data = _sample_writer("OTHER/1").to_bytes()
        with self.assertRaises(FormatError):
            BinaryReader(data, "BDTEST/1")

    def test_save_and_load(self):
        directory = tempfile.mkdtemp()
        path = os.path.join(directory, "sample.bin")
        _sample_writer().save(path)
        reader = BinaryReader.load(path, "BDTEST/1")
        self.assertEqual(reader.read_uint32(), 7)
