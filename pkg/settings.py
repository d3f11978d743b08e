"""Global settings for configuring bug-destiny."""
import os

DEFAULT_SEED = 42

OUTPUT_DIR = os.environ.get("BUGDESTINY_OUTPUT_DIR",
                            os.path.join(os.getcwd(), "out"))
LOGGING_DIR = os.environ.get("BUGDESTINY_LOG_DIR", None)

# Column names of the EclipsePlatform export.
DEFAULT_COLUMNS = {
    "id": "Issue_id",
    "description": "Description",
    "priority": "Priority",
    "created": "Created_time",
    "resolved": "Resolved_time",
    "resolution": "Resolution",
    "status": "Status",
}

CORPUS_CACHE_NAME = "corpus.bdcorp"
MANIFEST_NAME = "manifest.json"
TOPIC_MODEL_NAME = "topics.bdtopic"
MODELS_DIR_NAME = "models"

LOG_FORMAT = \
    '[%(levelname)-8s] %(asctime)s %(name)-12s:%(lineno)d %(message)s'


def logging_config(log_dir=None, level='INFO'):
    """Builds the ``logging.config.dictConfig`` dictionary.

    Args:
        log_dir: Directory for the rotating log file. ``LOGGING_DIR`` wins if
            set in the environment. With neither, only the console handler is
            configured.
        level: Level for the root logger.
    """
    log_dir = LOGGING_DIR or log_dir

    handlers = {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'standard',
            'stream': 'ext://sys.stderr',
        },
    }
    if log_dir is not None:
        # Make sure the logging directory exists.
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)
        handlers['file'] = {
            'level': 'DEBUG',
            'class': 'logging.handlers.RotatingFileHandler',
            'formatter': 'standard',
            'filename': os.path.join(log_dir, 'bugdestiny.log'),
            'maxBytes': 10 * 1024 * 1024,  # 10MB logfiles.
            'backupCount': 10,
        }

    return {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': LOG_FORMAT,
            },
        },
        'handlers': handlers,
        'loggers': {
            '': {
                'level': level,
                'handlers': list(handlers),
                'propagate': True
            },
            'matplotlib': {
                'level': 'WARNING',
                'handlers': list(handlers),
                'propagate': False
            },
            'git': {
                'level': 'WARNING',
                'handlers': list(handlers),
                'propagate': False
            },
        },
    }
