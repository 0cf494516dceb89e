"""
ihw.py
"""

import setuptools

setuptools.setup(
    name='ihw',
    version='0.1.0',
    packages=setuptools.find_packages(exclude=['tests', 'examples', 'examples.*']),
    description='Independent hypothesis weighting with cross-weighting',
    license='Apache License, Version 2.0',
    keywords=[
        "bonferroni",
        "covariate",
        "fdr",
        "fwer",
        "grenander",
        "hypothesis weighting",
        "ihw",
        "multiple testing",
        "p-value",
    ],
    python_requires='>=3.6',
    install_requires=[
        "numpy >= 1.17",
        "scipy >= 1.6",
        "scikit-learn >= 0.24",
        "pandas >= 1.5",
    ],
    setup_requires=[
        "nose >= 1.0",
        "nosexcover >= 1.0.10",
    ],
    entry_points={
        'console_scripts': [
            'ihw = ihw.cli:main',
        ],
    },
)
