import setuptools

__version__ = '0.1.0'

with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setuptools.setup(
    name="zeropi",
    version=__version__,
    description="Finite-difference spectra, degeneracy and disorder analysis of the 0-pi circuit.",
    long_description=long_description,
    long_description_content_type='text/markdown',
    license="Apache-2.0",
    python_requires=">=3.10",
    install_requires=['numpy', 'scipy'],
    packages=setuptools.find_packages(where='src', include=['zeropi', 'zeropi.*']),
    package_dir={'': 'src'},
    entry_points={
        'console_scripts': ['zeropi = zeropi._cli._main:main'],
    },
    classifiers=[
        "Operating System :: MacOS :: MacOS X",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords=[
        "0-pi qubit",
        "circuit quantization",
        "finite difference",
        "protected qubit",
        "superconducting circuits",
    ],
)
