"""Tests for the manifest module."""
# pylint: disable=missing-docstring

import hashlib
import json
import os
import tempfile
import unittest

import git

from experiment.config import RunConfig
from experiment.manifest import Manifest
from experiment.manifest import code_revision
from experiment.manifest import file_digest
from experiment.manifest import library_versions
from testing.fixtures import write_lines


class TestCodeRevision(unittest.TestCase):
    """Tests for code_revision."""

    def test_outside_repository(self):
        self.assertIsNone(code_revision(tempfile.mkdtemp()))

    def test_head_commit(self):
        directory = tempfile.mkdtemp()
        repo = git.Repo.init(directory)
        write_lines(os.path.join(directory, "a.txt"), ["a"])
        repo.index.add(["a.txt"])
        commit = repo.index.commit("Initial commit.")
        self.assertEqual(code_revision(directory), commit.hexsha)

    def test_searches_parent_directories(self):
        directory = tempfile.mkdtemp()
        repo = git.Repo.init(directory)
        write_lines(os.path.join(directory, "a.txt"), ["a"])
        repo.index.add(["a.txt"])
        commit = repo.index.commit("Initial commit.")
        child = os.path.join(directory, "child")
        os.makedirs(child)
        self.assertEqual(code_revision(child), commit.hexsha)


class TestManifest(unittest.TestCase):
    """Tests for Manifest."""

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.config = RunConfig.from_json(
            {"paths": {"output_dir": self.directory}, "seed": 5})

    def test_versions(self):
        versions = library_versions()
        self.assertIn("python", versions)
        self.assertIsNotNone(versions["numpy"])

    def test_file_digest(self):
        path = write_lines(os.path.join(self.directory, "x.txt"), ["x"])
        self.assertEqual(file_digest(path),
                         hashlib.sha256(b"x\n").hexdigest())

    def test_write(self):
        manifest = Manifest("ingest", self.config)
        output = write_lines(os.path.join(self.directory, "x.txt"), ["x"])
        manifest.add_output(output)
        manifest.summary = {"train": 8}
        manifest.write()

        self.assertEqual(manifest.path,
                         os.path.join(self.directory, "ingest_manifest.json"))
        with open(manifest.path, encoding="utf-8") as stream:
            document = json.load(stream)
        self.assertEqual(document["command"], "ingest")
        self.assertEqual(document["seed"], 5)
        self.assertEqual(document["config_digest"], self.config.digest())
        self.assertEqual(document["config"], self.config.to_json())
        self.assertEqual(document["outputs"], {"x.txt": file_digest(output)})
        self.assertEqual(document["summary"], {"train": 8})

    def test_rewrite_is_identical(self):
        manifest = Manifest("experiment", self.config)
        manifest.write()
        with open(manifest.path, "rb") as stream:
            first = stream.read()
        Manifest("experiment", self.config).write()
        with open(manifest.path, "rb") as stream:
            self.assertEqual(stream.read(), first)

    def test_creates_output_directory(self):
        self.config.paths.output_dir = os.path.join(self.directory, "a", "b")
        manifest = Manifest("predict", self.config)
        manifest.write()
        self.assertTrue(os.path.exists(manifest.path))


if __name__ == '__main__':
    unittest.main()
