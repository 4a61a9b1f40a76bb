import functools
import time
import uuid
from logging import getLogger
from typing import Callable

from src.context import run_id_var


log = getLogger(__name__)


def with_run_id(handler: Callable) -> Callable:
    """
    Wraps a command handler: assigns a fresh run id, logs start,
    exit code and elapsed time.
    """

    @functools.wraps(handler)
    def wrapper(config, *args, **kwargs):
        run_id = str(uuid.uuid4())
        token = run_id_var.set(run_id)

        log.info(f"Run ID: [{run_id}] Command started: {config.command}")
        start = time.perf_counter()
        try:
            result = handler(config, *args, **kwargs)
            log.info(f"Run ID: [{run_id}] Command completed with exit code {result.exit_code}")
            return result
        finally:
            elapsed_time = "{0:.0f}".format(1_000 * (time.perf_counter() - start))
            log.info(f"Run ID: [{run_id}] Elapsed time ms {elapsed_time}")
            run_id_var.reset(token)

    return wrapper
