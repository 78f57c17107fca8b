from setuptools import (setup, find_packages)

from pperf_cli import __version__

with open('README.md', 'r') as fh:
    long_description = fh.read()

setup(
    name='pperf-cli',
    version=__version__,
    description=(
        'Desk-scale computations with p-perfect commutative monoids'
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='Apache License 2.0',
    packages=find_packages(exclude=['tests']),
    keywords=(
        'commutative monoid localization group completion symmetric group '
        'homology bialgebra frobenius'
    ),
    classifiers=[
        'License :: OSI Approved :: Apache Software License',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
    install_requires=[
        'click>=8.0,<8.2',
        'pydantic>=1.10,<2',
        'sympy>=1.9',
    ],
    entry_points={
        'console_scripts': [
            'pperf=pperf_cli.cli:main',
        ],
    },
    python_requires='>=3.8'
)
