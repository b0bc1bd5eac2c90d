"""Build hook for the optional compiled scan kernel.

Metadata lives in pyproject.toml.  If Cython or a C compiler is missing the
package still installs and falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("catalanbounds._cscan", ["src/catalanbounds/_cscan.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
