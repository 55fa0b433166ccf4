from setuptools import setup, find_packages

CLASSIFIERS = [
    "Development Status :: 3 - Alpha",
    "Intended Audience :: Science/Research",
    "Intended Audience :: Developers",
    "License :: OSI Approved :: BSD License",
    "Programming Language :: Python",
    "Programming Language :: Python :: 3",
    "Topic :: Software Development",
    "Topic :: Scientific/Engineering",
    "Topic :: Scientific/Engineering :: Mathematics",
    "Operating System :: POSIX",
    "Operating System :: Unix",
    "Operating System :: MacOS"]


MAJOR = "0"
MINOR = "1"
PATCH = "0"
VERSION = "{0}.{1}.{2}".format(MAJOR, MINOR, PATCH)

def write_version_py(filename='pyrevol/version.py'):
    a = open(filename, 'w')
    try:
        a.write("version = '{}'\n".format(VERSION))
    finally:
        a.close()

README = open("README.rst").read()

write_version_py()

setup(
    name           = "pyrevol",
    version        = VERSION,
    description    = "Positive monotone solutions of semilinear Neumann problems on domains of revolution",
    long_description = README,
    license        = "BSD",
    keywords       = "semilinear elliptic equations, domains of revolution, dual variational principle",
    classifiers    = CLASSIFIERS,
    packages       = find_packages(exclude=['demo', 'doc', 'tests*']),
    include_package_data=True,
    install_requires=[
                      'numpy>=1.22',
                      'scipy>=1.12',
                      'sympy>=1.5',
                      'colorlog>=2.4.0',
                      'matplotlib>=3.3',
                      'h5py'
                      ],
    extras_require={'mpi': ['mpi4py>=3.0']},
    entry_points={'console_scripts': ['pyrevol=pyrevol.cli:main']},
)
