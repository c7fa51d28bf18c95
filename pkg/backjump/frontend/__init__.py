from backjump.frontend.generators import gen_coloring, gen_pigeonhole, gen_queens, gen_randcsp, generate
from backjump.frontend.parser import ModelParseError, load_model, parse_model
from backjump.frontend.printer import print_model

__all__ = [
    "ModelParseError", "gen_coloring", "gen_pigeonhole", "gen_queens", "gen_randcsp",
    "generate", "load_model", "parse_model", "print_model",
]
