from .boundary import boundary
from .exhaust import exhaust
from .gsr import gsr_check
from .harnack import harnack
from .shnol import shnol
from .spectrum import spectrum
from .supersol import supersol

__all__ = ["boundary", "exhaust", "gsr_check", "harnack", "shnol", "spectrum", "supersol"]
