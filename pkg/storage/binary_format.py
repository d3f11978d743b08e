"""Versioned little-endian binary container shared by the corpus cache
(BDCORP/1), topic models (BDTOPIC/1) and trained models (BDMODEL/1).

Layout: the magic string terminated by a newline, the payload written through
``BinaryWriter``, then a CRC-32 of everything before it as a little-endian
uint32. Strings are UTF-8 prefixed with their uint32 byte length; arrays are
prefixed with their uint64 element count.
"""

import binascii
import json
import logging
import struct

import numpy as np

from errors import ChecksumError
from errors import FormatError
from errors import VersionError

LOGGER = logging.getLogger(__name__)

_CRC = struct.Struct('<I')


class BinaryWriter(object):
    """Accumulates a payload behind a magic string.

    Attributes:
        magic: The versioned magic string, e.g. "BDMODEL/1".
    """

    def __init__(self, magic):
        assert '\n' not in magic
        self.magic = magic
        self._chunks = [magic.encode('ascii') + b'\n']

    def write_uint32(self, value):
        self._chunks.append(struct.pack('<I', value))

    def write_uint64(self, value):
        self._chunks.append(struct.pack('<Q', value))

    def write_int64(self, value):
        self._chunks.append(struct.pack('<q', value))

    def write_float64(self, value):
        self._chunks.append(struct.pack('<d', value))

    def write_bool(self, value):
        self._chunks.append(struct.pack('<?', bool(value)))

    def write_string(self, value):
        encoded = value.encode('utf-8')
        self.write_uint32(len(encoded))
        self._chunks.append(encoded)

    def write_optional_string(self, value):
        """Writes a presence flag followed by the string when present."""
        self.write_bool(value is not None)
        if value is not None:
            self.write_string(value)

    def write_json(self, value):
        """Writes ``value`` as a length-prefixed canonical JSON string."""
        self.write_string(json.dumps(value, sort_keys=True,
                                     separators=(',', ':')))

    def write_float64_array(self, values):
        array = np.ascontiguousarray(values, dtype='<f8').ravel()
        self.write_uint64(array.size)
        self._chunks.append(array.tobytes())

    def write_int64_array(self, values):
        array = np.ascontiguousarray(values, dtype='<i8').ravel()
        self.write_uint64(array.size)
        self._chunks.append(array.tobytes())

    def to_bytes(self):
        """Returns the full file contents with the CRC-32 trailer."""
        body = b''.join(self._chunks)
        return body + _CRC.pack(binascii.crc32(body) & 0xffffffff)

    def save(self, path):
        data = self.to_bytes()
        with open(path, 'wb') as stream:
            stream.write(data)
        LOGGER.debug("Wrote %s (%d bytes) to %s.", self.magic, len(data), path)


class BinaryReader(object):
    """Reads a payload written by ``BinaryWriter`` after validating the magic
    string and the CRC-32 trailer.
    """

    def __init__(self, data, magic):
        self._data = data
        self._offset = 0
        self.magic = magic

        family = magic.split('/')[0] + '/'
        newline = data.find(b'\n', 0, 64)
        if newline < 0:
            # A file cut inside its own header line is a truncated file.
            if (magic + '\n').encode('ascii').startswith(data):
                raise ChecksumError("{} file is truncated.".format(magic))
            raise FormatError("Not a {} file: no header found.".format(family))
        found = data[:newline].decode('ascii', errors='replace')
        if not found.startswith(family):
            raise FormatError("Not a {} file: header is {!r}.".format(
                family, found))
        if found != magic:
            raise VersionError(found, magic)

        if len(data) < newline + 1 + _CRC.size:
            raise ChecksumError("File is truncated.")
        body, trailer = data[:-_CRC.size], data[-_CRC.size:]
        (stored,) = _CRC.unpack(trailer)
        if stored != binascii.crc32(body) & 0xffffffff:
            raise ChecksumError(
                "CRC-32 mismatch; {} file is truncated or corrupted.".format(
                    magic))
        self._end = len(body)
        self._offset = newline + 1

    @classmethod
    def load(cls, path, magic):
        with open(path, 'rb') as stream:
            data = stream.read()
        return cls(data, magic)

    def _take(self, size):
        if self._offset + size > self._end:
            raise ChecksumError("Unexpected end of {} payload.".format(
                self.magic))
        chunk = self._data[self._offset:self._offset + size]
        self._offset += size
        return chunk

    def _unpack(self, fmt):
        return struct.unpack(fmt, self._take(struct.calcsize(fmt)))[0]

    def read_uint32(self):
        return self._unpack('<I')

    def read_uint64(self):
        return self._unpack('<Q')

    def read_int64(self):
        return self._unpack('<q')

    def read_float64(self):
        return self._unpack('<d')

    def read_bool(self):
        return self._unpack('<?')

    def read_string(self):
        size = self.read_uint32()
        return self._take(size).decode('utf-8')

    def read_optional_string(self):
        if self.read_bool():
            return self.read_string()
        return None

    def read_json(self):
        return json.loads(self.read_string())

    def read_float64_array(self):
        count = self.read_uint64()
        return np.frombuffer(self._take(8 * count), dtype='<f8').astype(
            np.float64)

    def read_int64_array(self):
        count = self.read_uint64()
        return np.frombuffer(self._take(8 * count), dtype='<i8').astype(
            np.int64)

    def finish(self):
        """Asserts the whole payload was consumed."""
        if self._offset != self._end:
            raise FormatError("{} payload has {} trailing bytes.".format(
                self.magic, self._end - self._offset))
