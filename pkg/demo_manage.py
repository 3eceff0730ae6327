#!/usr/bin/env python
"""Django's command-line utility for administrative tasks."""

from demo_df_contours.__main__ import main

if __name__ == "__main__":
    main()
