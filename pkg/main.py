"""Command-line entry point for bug-destiny experiments."""
import argparse
import json
import logging.config
import os
import sys

from errors import BugDestinyError
from errors import ConfigurationError
from experiment.commands import COMMANDS
from experiment.config import RunConfig
from experiment.config import Subset
import settings

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_CONFIGURATION_ERROR = 2


def _override(text):
    """Parses KEY=VALUE; VALUE is read as JSON when it parses, else kept as a
    string.
    """
    if "=" not in text:
        raise argparse.ArgumentTypeError(
            "Expected KEY=VALUE; got {!r}.".format(text))
    key, value = text.split("=", 1)
    try:
        value = json.loads(value)
    except ValueError:
        pass
    return key.strip(), value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bugdestiny",
        description="Predicts the time to resolution and the destiny of bug "
                    "reports from their sentiment, priority and topic.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True,
                        help="JSON run configuration.")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--task")
    parser.add_argument("--balancing")
    parser.add_argument("--subset", choices=[each.value for each in Subset])
    parser.add_argument("--out", help="Output directory.")
    parser.add_argument("--render", choices=("png", "svg"),
                        help="Also render plots in this format.")
    parser.add_argument("--set", dest="overrides", action="append",
                        type=_override, default=[], metavar="KEY=VALUE",
                        help="Override a setting by dunder path, e.g. "
                             "train__epochs=5.")
    parser.add_argument("--text", help="predict: description to score.")
    parser.add_argument("--priority", type=int,
                        help="predict: priority of --text.")
    parser.add_argument("--reports", help="predict: file of reports to score.")
    parser.add_argument("--log-level", default="INFO")
    return parser


def load_config(args):
    """The RunConfig of ``args.config`` with command-line overrides applied."""
    config = RunConfig.load(args.config)
    overrides = dict(args.overrides)
    for name in ("seed", "task", "balancing", "render"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.out is not None:
        overrides["paths__output_dir"] = os.path.abspath(args.out)
    config.apply_overrides(overrides)
    if args.subset is not None:
        config.subset = Subset(args.subset)
    return config


def run(args):
    config = load_config(args)
    logging.config.dictConfig(settings.logging_config(
        os.path.join(config.paths.output_dir, "log"), args.log_level))
    command = COMMANDS[args.command]
    if args.command == "predict":
        return command(config, text=args.text, priority=args.priority,
                       reports_path=args.reports)
    return command(config)


def main(argv=None):
    """Runs one subcommand and returns the process exit code."""
    args = build_parser().parse_args(argv)
    logging.config.dictConfig(settings.logging_config(level=args.log_level))
    try:
        result = run(args)
    except ConfigurationError as error:
        LOGGER.error("Configuration error: %s", error)
        return EXIT_CONFIGURATION_ERROR
    except BugDestinyError as error:
        LOGGER.error("%s: %s", type(error).__name__, error)
        return EXIT_RUNTIME_ERROR
    except Exception as error:  # pylint: disable=broad-except
        LOGGER.exception(error)
        return EXIT_RUNTIME_ERROR
    json.dump(result, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
