#!/usr/bin/env python3
"""
optcolor command-line entry point.

    python run.py generate rmat-g --scale 14 --output rmat_g_14.txt
    python run.py bench rmat_g_14.txt --threads 1,2,4,8
"""

import sys
from dotenv import load_dotenv

# Load OPTCOLOR_* settings from .env file
load_dotenv()

from optcolor.cli import main

if __name__ == '__main__':
    sys.exit(main())
