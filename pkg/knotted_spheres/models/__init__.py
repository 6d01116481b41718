from .surface import *
from .reports import *
