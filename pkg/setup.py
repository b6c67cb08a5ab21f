# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""Ramsey numbers of multiple copies of graphs, with certificates

Multiram is an open-source toolkit that computes and certifies Ramsey numbers
of disjoint unions of graphs. It builds the extremal 2-colourings behind the
known lower bounds, detects monochromatic patterns, runs an exact search for
small Ramsey numbers and finds clique tilings of dense host graphs.
"""

import sys

from setuptools import find_packages, setup

if sys.version_info < (3, 8):
    raise SystemExit('ERROR: Multiram needs at least python 3.8 to work')

# Depend on pytest_runner only when the tests are actually invoked
needs_pytest = set(['pytest', 'test']).intersection(sys.argv)
pytest_runner = ['pytest_runner'] if needs_pytest else []

setup_requires = pytest_runner

install_requires = [
    'argh >= 0.26.2, < 0.30',
    'joblib >= 0.16.0',
    'networkx >= 2.5',
    'numpy >= 1.20',
]

multiram = {}
with open('multiram/version.py', 'r') as version:
    exec(version.read(), multiram)

setup(
    name='multiram',
    version=multiram['__version__'],
    author='Multiram Project',
    packages=find_packages(exclude=["test"]),
    entry_points={
        'console_scripts': [
            'multiram=multiram.cli:main',
        ],
    },
    license='GPL-3.0',
    description=__doc__.split("\n")[0],
    long_description="\n".join(__doc__.split("\n")[2:]),
    install_requires=install_requires,
    platforms=['Linux'],
    classifiers=[
        'Environment :: Console',
        'Development Status :: 4 - Beta',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: GNU General Public License v3 or later '
        '(GPLv3+)',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
    setup_requires=setup_requires,
    tests_require=[
        'hypothesis',
        'mock',
        'pytest-timeout',
        'pytest',
    ],
)
