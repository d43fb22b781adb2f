# This import line below allows quodigit to be used as a submodule without double naming on imports.
# For example:
#     quodigit.quodigit import FloorSumCounter
# Simplifies to:
#     from quodigit import FloorSumCounter
# More importantly imports do not need to change if later quodigit is installed as a package instead.
from .quodigit import *  # noqa
