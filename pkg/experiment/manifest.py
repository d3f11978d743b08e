"""Run manifests: what a command ran with, written before it computes
anything and completed with digests of what it wrote.
"""

import binascii
import hashlib
import importlib
import json
import logging
import os
import platform

import git

import settings

LOGGER = logging.getLogger(__name__)

LIBRARIES = ("numpy", "pandas", "sklearn", "nltk", "matplotlib", "pytz",
             "git")


def code_revision(path=None):
    """The git commit checked out at ``path`` (default: this source tree), or
    None outside a git repository.
    """
    path = path or os.path.dirname(os.path.dirname(os.path.realpath(
        __file__)))
    try:
        repo = git.Repo(path, search_parent_directories=True)
        return binascii.hexlify(repo.head.object.binsha).decode('utf-8')
    except (git.InvalidGitRepositoryError, git.NoSuchPathError, ValueError):
        LOGGER.debug("No git revision for %s.", path)
        return None


def library_versions():
    versions = {"python": platform.python_version()}
    for name in LIBRARIES:
        try:
            module = importlib.import_module(name)
        except ImportError:
            versions[name] = None
            continue
        versions[name] = getattr(module, "__version__", None)
    return versions


def file_digest(path):
    hasher = hashlib.sha256()
    with open(path, "rb") as stream:
        for block in iter(lambda: stream.read(1 << 20), b""):
            hasher.update(block)
    return hasher.hexdigest()


class Manifest(object):
    """Reproduction record of one command.

    Attributes:
        command: Subcommand name.
        config: The RunConfig.
        path: Where the manifest is written.
        outputs: Output path to SHA-256 of its contents.
        summary: Command-specific results.
    """

    def __init__(self, command, config):
        self.command = command
        self.config = config
        self.path = os.path.join(config.paths.output_dir, "{}_{}".format(
            command, settings.MANIFEST_NAME))
        self.outputs = {}
        self.summary = {}

    def to_json(self):
        return {
            "command": self.command,
            "config": self.config.to_json(),
            "config_digest": self.config.digest(),
            "seed": self.config.seed,
            "code_revision": code_revision(),
            "versions": library_versions(),
            "outputs": self.outputs,
            "summary": self.summary,
        }

    def add_output(self, path):
        self.outputs[os.path.relpath(path, self.config.paths.output_dir)] = \
            file_digest(path)

    def write(self):
        if not os.path.exists(self.config.paths.output_dir):
            os.makedirs(self.config.paths.output_dir)
        with open(self.path, "w", encoding="utf-8") as stream:
            json.dump(self.to_json(), stream, indent=2, sort_keys=True)
            stream.write("\n")
        LOGGER.info("Wrote %s manifest to %s.", self.command, self.path)
