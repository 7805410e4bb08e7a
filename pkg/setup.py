"""Setup configuration for nbspectra package."""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="nbspectra",
    version="1.0.0",
    author="nbspectra developers",
    description="Nonbacktracking spectra of sparse random matrices",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    include_package_data=True,
    package_data={
        "nbspectra": [
            "shared/walks/fixtures/*.txt",
            "features/experiments/configs/*.conf",
            "features/experiments/configs/*.yaml",
            "features/experiments/configs/goldens/*.csv",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.26.0",
        "scipy>=1.11.0",
        "networkx>=3.0",
        "PyYAML>=6.0",
        "python-dotenv>=1.0.0",
        "fastmcp>=0.1.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-asyncio>=0.21.0",
            "black>=23.0.0",
            "ruff>=0.1.0",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "nbspectra=nbspectra.__main__:main",
        ],
    },
)
