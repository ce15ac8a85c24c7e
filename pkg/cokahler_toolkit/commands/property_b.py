"""property-b command"""

from ..algebra.derivations import property_b_check
from .utils import load_algebra


def property_b(path, options):
    """Decide Property B for the cohomology of a document

    Args:
        path: Path to the algebra document
        options: Options from the command line
    """
    H = load_algebra(path, options).cohomology
    report = property_b_check(H)
    report.betti = H.dims()
    return report
