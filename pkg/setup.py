'''
Presburger arithmetic toolkit: decision procedure, semilinear sets,
counting functions, definable orders and interpretations in (N, +).

This package is distributed under Apache 2 license.
'''

from setuptools import setup

from os import path
this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

CLASSIFIERS = """
Development Status :: 4 - Beta
Intended Audience :: Science/Research
Intended Audience :: Developers
License :: OSI Approved :: Apache Software License
Programming Language :: Python
Programming Language :: Python :: 3
Topic :: Scientific/Engineering :: Mathematics
Operating System :: Microsoft :: Windows
Operating System :: Unix
Operating System :: MacOS
"""

metadata = dict(
    name='pra_interp',
    version='0.1.0',
    description='Interpretations of Presburger arithmetic in itself: '
                'quantifier elimination, semilinear sets and counting',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='Apache License, Version 2.0',
    classifiers=[_f for _f in CLASSIFIERS.split('\n') if _f],
    packages=[
        'pra_interp',
        'pra_interp.tests',
    ],
    install_requires=[
        'numpy',
        'sympy',
        'matplotlib',
    ],
    entry_points={
        'console_scripts': ['pra=pra_interp.cli:main'],
    },
    python_requires='>=3.8',
    zip_safe=True,
)

setup(**metadata)
