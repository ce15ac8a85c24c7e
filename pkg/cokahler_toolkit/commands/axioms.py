"""check-axioms command"""

from ..algebra.axioms import verify_algebra_axioms
from .utils import load_algebra


def check_axioms(path, options):
    """Check unit, graded commutativity, associativity, d^2 = 0 and Leibniz on a document

    Args:
        path: Path to the algebra document
        options: Options from the command line
    """
    loaded = load_algebra(path, options)
    report = verify_algebra_axioms(loaded.chain)
    report.data["dimensions"] = loaded.chain.algebra.dims()
    return report
