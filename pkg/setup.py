#!/usr/bin/env python

from setuptools import setup, find_packages

setup(
    name="otrisym",
    version="0.1.0",
    description="Community detection with orthogonal symmetric nonnegative trifactorization",
    long_description=open("README.rst").read(),
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={"otrisym.datasets": ["*.edges", "*.labels"]},
    install_requires=["decorator", "numpy>=1.17", "scipy>=1.4", "scikit-learn>=0.22"],
    entry_points={"console_scripts": ["otrisym=otrisym.cli:main"]},
    test_suite="otrisym.tests",
    python_requires=">=3.6",
    platforms=["any"],
    keywords="community detection block model nonnegative matrix factorization",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
    ],
)
