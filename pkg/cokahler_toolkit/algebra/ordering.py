"""Well-ordering of generators by their differentials

A Sullivan algebra needs its generators listed so that d(x) only mentions
generators that come earlier. Generators are sorted topologically (dependencies
first, ties kept in declaration order) and a dependency cycle is rejected.
"""

from .errors import AlgebraInputError


def _mentioned_generators(poly, names):
    """Generator names occurring in a polynomial written over names"""
    mentioned = []
    for monomial in poly:
        for name, e in zip(names, monomial):
            if e and name not in mentioned:
                mentioned.append(name)
    return mentioned


def _build_dependency_graph(generator, dependencies, visited, path):
    """Recursively collect a generator after everything its differential needs

    Args:
        generator: Name of the generator
        dependencies: dict mapping generator names to the names their differential mentions
        visited: Set of generators already placed
        path: Current path (for cycle detection)

    Returns:
        List of generator names in dependency order (dependencies first)
    """
    if generator in path:
        cycle = ' -> '.join(path + [generator])
        raise AlgebraInputError(f"Circular dependency detected: {cycle}")

    if generator in visited:
        return []

    visited.add(generator)
    path = path + [generator]

    result = []
    for dep in dependencies.get(generator, []):
        if dep == generator:
            raise AlgebraInputError(f"Circular dependency detected: {generator} -> {generator}")
        result.extend(_build_dependency_graph(dep, dependencies, visited, path))

    result.append(generator)
    return result


def generator_dependencies(generators, differential):
    """Map each generator to the generators its differential mentions"""
    names = [name for name, _ in generators]
    return {name: _mentioned_generators(differential.get(name, {}), names) for name in names}


def well_order(generators, differential):
    """Generator names ordered so that d(x) only mentions earlier generators

    Args:
        generators: sequence of (name, degree)
        differential: dict name -> polynomial over the generators (exponent tuples)

    Raises:
        AlgebraInputError: the differentials have a dependency cycle
    """
    dependencies = generator_dependencies(generators, differential)
    visited = set()
    order = []
    for name, _ in generators:
        order.extend(_build_dependency_graph(name, dependencies, visited, []))
    return order


def is_well_ordered(generators, differential):
    """True when every differential only mentions strictly earlier generators"""
    dependencies = generator_dependencies(generators, differential)
    seen = set()
    for name, _ in generators:
        if any(dep not in seen for dep in dependencies[name]):
            return False
        seen.add(name)
    return True
