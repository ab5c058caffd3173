"""
    Dependency graph under the execution nodes.

    A GraphNode depends on other nodes (its `dependencies`). The graph
    reachable from any node stays acyclic, and the dependencies of a node
    have distinct names, so that results keyed by name never collide.
"""

from .errors import OrliczError


def by_name(node):
    return node.name


class DAGException(OrliczError):
    """ A change to the graph was rejected """

    def __init__(self, message, *nodes):
        super().__init__(message, *nodes)
        self.nodes = nodes


class GraphNode:

    def __init__(self, name):
        self.name = name

        self.dependencies = set()
        self.dependents = set()


    def add(self, dependency):
        """ Makes this node depend on `dependency` """

        if dependency in self.dependencies:
            return

        if dependency.name in { node.name for node in self.dependencies }:
            raise DAGException(
                'Repeated dependency name %r in %s' % (dependency.name, self.name),
                self, dependency
            )

        if dependency.depends_on(self):
            raise DAGException(
                'Adding %s to %s would close a cycle' % (dependency.name, self.name),
                self, dependency
            )

        self.dependencies.add(dependency)
        dependency.dependents.add(self)


    def depends_on(self, other):
        """ Whether other is reachable from this node (itself included) """

        return any(node is other for node in self.walk())


    def walk(self):
        """
            Every node reachable from this one, itself first,
            depth first with dependencies visited in name order.
        """

        stack, seen = [ self ], set()

        while stack:
            node = stack.pop()

            if node in seen:
                continue

            seen.add(node)
            yield node

            stack.extend(sorted(node.dependencies, key=by_name, reverse=True))


    def execution_order(self):
        """
            The reachable nodes, each one after all of its dependencies.
            Whenever several nodes are ready, the first by name goes first,
            so the order only depends on the names.
        """

        nodes = list(self.walk())
        waiting = { node: len(node.dependencies) for node in nodes }

        ready = sorted((node for node in nodes if not node.dependencies), key=by_name)
        order = []

        while ready:
            node = ready.pop(0)
            order.append(node)

            for dependent in node.dependents:
                # dependents outside this graph are not scheduled
                if dependent in waiting:
                    waiting[dependent] -= 1

                    if not waiting[dependent]:
                        ready.append(dependent)

            ready.sort(key=by_name)

        return order


    def __repr__(self):
        return '<%s %s>' % (type(self).__name__, self.name)
