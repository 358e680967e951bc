from setuptools import setup, find_packages

setup(name="normal_restriction", packages=find_packages(exclude=["test"]),
      install_requires=["sympy"])
