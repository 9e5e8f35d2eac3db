import setuptools


def parse_requirements(filename: str):
    """ load requirements from a pip requirements file """
    lineiter = (line.strip() for line in open(filename))
    return [line for line in lineiter if line and not line.startswith("#")]


reqs = parse_requirements("requirements.txt")


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="cubelab",
    version="0.1.0",
    author="",
    author_email="",
    description="Cubes of equivalence relations, higher extensions and distributive tuples of relations",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    package_data={"cubelab.models.groups": ["catalog.yaml"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8',
    install_requires=reqs,
    extras_require={"parallel": ["ray>=2.0"]},
    entry_points={"console_scripts": ["cubelab=cubelab.cli:main"]},
)
