import copy
import json

import pytest

from cokahler_toolkit.algebra.cohomology import GroupActionSpec
from cokahler_toolkit.algebra.free import presented_algebra, torus


def terms(*pairs):
    """Document terms from (coefficient, [names]) pairs"""
    return [{"coeff": str(c), "monomial": list(names)} for c, names in pairs]


T2_DOCUMENT = {
    "name": "T2",
    "coefficient_field": "Q",
    "truncation_degree": 4,
    "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
    "relations": [],
    "differential": {},
    "classes": {"omega": terms((1, ["x", "y"]))},
    "action": {"order": 4, "images": {"x": terms((1, ["y"])), "y": terms((-1, ["x"]))}},
}

S2xS2_DOCUMENT = {
    "name": "S2xS2",
    "coefficient_field": "Q",
    "truncation_degree": 4,
    "generators": [{"name": "a", "degree": 2}, {"name": "b", "degree": 2}],
    "relations": [terms((1, ["a", "a"])), terms((1, ["b", "b"]))],
    "differential": {},
    "classes": {"omega": terms((1, ["a"]), (1, ["b"]))},
    "action": {"order": 2, "images": {"a": terms((1, ["b"])), "b": terms((1, ["a"]))}},
}

S3_DOCUMENT = {
    "name": "S3",
    "coefficient_field": "Q",
    "truncation_degree": 3,
    "generators": [{"name": "s3", "degree": 3}],
    "relations": [],
    "differential": {},
    "classes": {},
}

KT_DOCUMENT = {
    "name": "KT",
    "coefficient_field": "Q",
    "truncation_degree": 4,
    "generators": [{"name": f"e{i}", "degree": 1} for i in range(1, 5)],
    "relations": [],
    "differential": {"e4": terms((1, ["e1", "e2"]))},
    "classes": {"omega": terms((1, ["e1", "e3"]), (1, ["e2", "e4"]))},
}


@pytest.fixture
def t2():
    return torus(2, ["x", "y"])


@pytest.fixture
def t2_rotation(t2):
    """x -> y, y -> -x: an automorphism of order 4 fixing x*y"""
    images = {"x": t2.generators["y"], "y": -t2.generators["x"]}
    return GroupActionSpec.from_generator_images(t2, images, 4)


@pytest.fixture
def s2xs2():
    return presented_algebra([("a", 2), ("b", 2)], [[(1, ["a", "a"])], [(1, ["b", "b"])]], 4, label="S2xS2")


@pytest.fixture
def s2xs2_swap(s2xs2):
    images = {"a": s2xs2.generators["b"], "b": s2xs2.generators["a"]}
    return GroupActionSpec.from_generator_images(s2xs2, images, 2)


@pytest.fixture
def write_document(tmp_path):
    """Write a document dict to tmp_path/<name> and return the path as a string"""
    def write(data, name="doc.alg"):
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2))
        return str(path)
    return write


@pytest.fixture
def documents():
    """Fresh copies of the example documents, keyed by name"""
    return copy.deepcopy({"T2": T2_DOCUMENT, "S2xS2": S2xS2_DOCUMENT, "S3": S3_DOCUMENT, "KT": KT_DOCUMENT})


@pytest.fixture
def example1_path(write_document):
    return write_document(T2_DOCUMENT, "example1.alg")


@pytest.fixture
def example2_path(write_document):
    return write_document(S2xS2_DOCUMENT, "example2.alg")
