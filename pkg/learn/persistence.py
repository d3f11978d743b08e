"""Trained model files (BDMODEL/1): a JSON header describing the model and
its feature pipeline, then the flat weight array.
"""

import logging
import os

from errors import ConfigurationError
from learn.network import ModelSpec
from learn.trainer import TrainedModel
from storage.binary_format import BinaryReader
from storage.binary_format import BinaryWriter

LOGGER = logging.getLogger(__name__)

MODEL_MAGIC = "BDMODEL/1"


def save_model(model, path):
    writer = BinaryWriter(MODEL_MAGIC)
    writer.write_json({
        "spec": model.spec.to_json(),
        "train_manifest": model.train_manifest,
        "metadata": model.metadata,
    })
    writer.write_float64(model.target_mean)
    writer.write_float64(model.target_std)
    writer.write_float64_array(model.loss_history)
    writer.write_float64_array(model.weights)
    writer.save(path)
    LOGGER.info("Saved %s model to %s.", model.spec.kind.value, path)


def load_model(path):
    """Reads a model written by ``save_model``.

    Raises:
        ConfigurationError: ``path`` does not exist.
        FormatError: The file is not a readable BDMODEL/1 file.
    """
    if not os.path.exists(path):
        raise ConfigurationError("Model file {} does not exist.".format(path))
    reader = BinaryReader.load(path, MODEL_MAGIC)
    header = reader.read_json()
    target_mean = reader.read_float64()
    target_std = reader.read_float64()
    loss_history = reader.read_float64_array()
    weights = reader.read_float64_array()
    reader.finish()
    return TrainedModel(ModelSpec.from_json(header["spec"]), weights,
                        target_mean, target_std, loss_history.tolist(),
                        header["train_manifest"], header["metadata"])
