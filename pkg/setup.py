from setuptools import find_packages, setup

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name="covprior",
    packages=find_packages(),
    version="0.1.0",
    description="Prioritize covariates for a planned study in a meta-analysis",
    license="MIT",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Bio-Informatics",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=["numpy", "scipy", "pandas>=1.5", "tabulate", "tqdm", "joblib"],
    package_data={"covprior": ["data/*.csv", "data/*.cfg"]},
    entry_points={"console_scripts": ["covprior=covprior.cli:main"]},
)
