"""
A setuptools based setup module.
"""

from setuptools import setup, find_packages
from os import path

here = path.abspath(path.dirname(__file__))

description = 'quodigit: exact digit statistics of lattice quotients n/m'

setup(
    name='quodigit',
    version='0.1.0',
    description=description,
    long_description=description,
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',

        'License :: OSI Approved :: MIT License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
    ],

    keywords='number theory lattice points digits digamma primes',

    packages=find_packages(exclude=['contrib', 'docs', 'tests']),

    python_requires='>=3.8',

    install_requires=['numpy', 'pypng', 'scipy'],

    extras_require={
        'test': ['pytest', 'hypothesis'],
    },

    entry_points={
        'console_scripts': ['quodigit=quodigit.cli:main'],
    },

    package_data={'quodigit': ['test_data/*.csv']},
    data_files=[],
)
