#!/usr/bin/env python3

import logging
import os
import sys

from dotenv import load_dotenv

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_environment():
    load_dotenv()

    level_name = os.getenv("CONGEST_LOG_LEVEL", "INFO").upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        print(f"Unknown CONGEST_LOG_LEVEL {level_name!r}, falling back to INFO")
        level = logging.INFO
    logging.basicConfig(format=LOG_FORMAT, level=level)


def main():
    setup_environment()

    # imported after the environment is loaded so module defaults see .env values
    from cli import main as run_cli

    sys.exit(run_cli())


if __name__ == "__main__":
    main()
