"""
    File to setup the package.
"""

# ##############################################################################
# Imports
# ##############################################################################

# General
from setuptools import find_packages, setup

# ##############################################################################
# parameters
# ##############################################################################


# List with required packages.
REQUIRED = [
    "numpy==1.26.2",
    "pyyaml==6.0.1",
    "scipy==1.11.4",
]


# ##############################################################################
# Setup
# ##############################################################################


setup(
    description=(
        "Package that estimates the density of a signal from a stream of "
        "noisy observations with Newton's algorithm, with credible intervals "
        "and bands."
    ),
    entry_points={
        "console_scripts": ["newtondeconv = newtondeconv.cli.main:main"],
    },
    install_requires=REQUIRED,
    license="MIT",
    name="newtondeconv",
    package_data={
        "newtondeconv.cli": ["parameters.yaml"],
        "newtondeconv.synth": ["presets.yaml"],
    },
    packages=find_packages(include=["newtondeconv", "newtondeconv.*"]),
    python_requires=">=3.10",
    version="0.0.1",
)
