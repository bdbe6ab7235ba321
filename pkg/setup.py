"""Build script for the optional compiled search kernel.

The backtracking difference-set search has a compiled (Cython) kernel and a
pure-Python twin; the package selects between them at import time.  Building
the extension is best-effort: if Cython or a C compiler is unavailable the
install still succeeds and the pure kernel is used.  Set POWERSUM_NO_EXT=1 to
skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("POWERSUM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext = Extension("powersum._search_cy", ["src/powersum/_search_cy.pyx"])
        ext.optional = True  # compile failures degrade to the pure kernel
        ext_modules = cythonize([ext], language_level="3")
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
