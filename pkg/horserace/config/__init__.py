import logging

logger = logging.getLogger("horserace")
logger.addHandler(logging.NullHandler())
