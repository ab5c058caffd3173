from . import read, parse
from .parse import parse_orlicz, parse_range, parse_weights
from .read import read_spline, read_values, read_weights
