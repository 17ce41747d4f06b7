import json
import logging

_logger = logging.getLogger("ffzeta.metrics")


def push_metric(data):
    _logger.info(json.dumps(data, sort_keys=True, default=str))
