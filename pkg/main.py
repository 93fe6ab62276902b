#!/usr/bin/env python3
"""
RIS UAV Channel Simulator - run from a source checkout.

    python main.py simulate --sweep t=0:8:0.5 --model subarray,beam
"""

from src.cli import main

if __name__ == "__main__":
    main()
