"""Exceptions raised by bug-destiny. The command line maps
``ConfigurationError`` to exit code 2 and every other ``BugDestinyError`` to
exit code 1.
"""


class BugDestinyError(RuntimeError):
    """Base class for errors the command line reports without a traceback."""


class ConfigurationError(BugDestinyError):
    """The run configuration or one of the files it names is unusable."""


class DataError(BugDestinyError):
    """The data cannot support the requested computation."""


class FormatError(BugDestinyError):
    """A versioned binary file could not be decoded."""


class VersionError(FormatError):
    """A versioned binary file carries a version this build does not read.

    Attributes:
        found: The magic string read from the file.
        expected: The magic string this build writes.
    """
    def __init__(self, found, expected):
        super(VersionError, self).__init__(
            "Unsupported file version {!r}; expected {!r}.".format(
                found, expected))
        self.found = found
        self.expected = expected


class ChecksumError(FormatError):
    """A versioned binary file is truncated or corrupted."""


class TrainingError(BugDestinyError):
    """Training diverged or left a model part unfitted."""
