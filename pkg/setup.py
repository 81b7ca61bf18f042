from setuptools import find_packages, setup

setup(
    name="blmix",
    version="1.0.0",
    packages=find_packages(include=["blmix*"]),
    install_requires=[
        "click>=8.1",
        "python-dotenv>=1.0",
        "tqdm>=4.66",
        "pydantic>=2.0",
        "numpy>=1.26",
        "scipy>=1.11",
        "matplotlib>=3.8",
    ],
    entry_points={
        "console_scripts": [
            "blmix=blmix.cli:cli",
        ],
    },
    python_requires=">=3.10,<3.14",
)
