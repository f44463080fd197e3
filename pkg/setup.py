from setuptools import find_packages, setup

setup(
    name="dnls-trains",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_dir={
        "dnls_trains": "dnls_trains"
    },
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "lxml",
        "click"
    ],
    entry_points={
        "console_scripts": [
            "dnls-trains=dnls_trains.cli:main"
        ]
    },
    python_requires=">=3.9",
    use_scm_version=True
)
