# -*- coding: utf-8 -*-

import re

from setuptools import setup


# Read the version without importing the package (and its dependencies)
with open('orliczwidths/__init__.py') as f:
    version = re.search(r"__version__ = '([^']+)'", f.read()).group(1)

setup(
    name = "orliczwidths",
    packages = ["orliczwidths", "orliczwidths.factory"],
    version = version,
    description = "Exact widths of diagonal operators between Orlicz sequence spaces",
    keywords = ["orlicz", "widths", "approximation", "n-term"],
    python_requires = ">=3.8",
    install_requires = [
        "numpy>=1.17",
        "pandas>=1.5",
        "shewchuk",
    ],
    extras_require = {
        "tests": ["pytest>=7", "hypothesis>=6"],
    },
    entry_points = {
        "console_scripts": ["orliczwidths = orliczwidths.cli:main"],
    },
    classifiers = [
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
        ],
    long_description = """\
Exact widths of diagonal operators between Orlicz sequence spaces
------------------------------------------------------------------

Luxemburg norms, best approximations over index sets, basis and
Kolmogorov widths, and best n-term approximations, each checked
against brute-force numerical oracles.

This version requires Python 3.8+.
"""
)
