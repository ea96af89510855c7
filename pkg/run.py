"""
Main Entry Point for the EFD Toolkit
Path: /run.py
"""

import logging
import sys

from dotenv import load_dotenv

load_dotenv()

# settings read the environment at import, so they come after load_dotenv
from core.settings.configs import settings  # noqa: E402
from core.cli.commands import run  # noqa: E402


logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


if __name__ == '__main__':
    sys.exit(run(sys.argv[1:]))
