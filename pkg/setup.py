#!/usr/bin/env python

from setuptools import find_packages, setup

setup(name='divisible_fwe',
      version='0.1',
      description='Divisible formal weight enumerators, binomial moments, zeta polynomials and the '
                  'Riemann hypothesis, in exact arithmetic',
      packages=find_packages(where='src'),
      package_dir={"": "src"},
      python_requires='>=3.8',
      install_requires=["numpy>=1.17",
                        "PyYAML",
                        "regex",
                        "typing_extensions",
                        "sympy>=1.9",
                        "mpmath>=1.2",
                        ],
      entry_points={'console_scripts': ['divisible_fwe = divisible_fwe.cli.__main__:main']},
      )
