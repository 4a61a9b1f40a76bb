import logging

from src.config import settings


def setup_logging():
    handlers: list[logging.Handler] = [logging.StreamHandler()]  # stderr, stdout is for reports
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))

    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s [%(levelname)s] [%(message)s]",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=handlers,
    )
