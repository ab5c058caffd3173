"""
    Nodes of an execution graph.

    A Node wraps a function and its arguments. Any Node among the
    arguments becomes a dependency: it runs first and its result is
    passed in its place. The verify suites and the table rows of the
    CLI are Nodes collected under a Root.
"""

import json
import logging
import traceback
from copy import deepcopy
from itertools import chain

from .dag import GraphNode
from .decorators import bound


logger = logging.getLogger(__name__)

_PENDING = object()


class Node(GraphNode):
    """
        A named computation. run() executes the graph below this node
        (every dependency once, in execution_order) and returns its result;
        finished nodes keep their result until reset.
    """

    silent = False
    store_result = True

    class State:

        IDLE = 'idle'
        RUNNING = 'running'
        ERROR = 'error'
        FINISHED = 'finished'


    def __init__(self, name, func, *args, **kwargs):
        super().__init__(name)

        self.func = func
        self.args = args
        self.kwargs = kwargs

        for value in chain(args, kwargs.values()):
            if isinstance(value, Node):
                self.add(value)

        self.variables = {}
        self._clear()


    def _clear(self):
        self.state = Node.State.IDLE
        self._result = _PENDING


    def reset(self):
        self._clear()


    @property
    def finished(self):
        return self.state == Node.State.FINISHED


    @property
    def result(self):
        """ A copy of the result, running the graph if needed """

        if not self.finished:
            self.run()

        return deepcopy(self._result)


    def __call__(self):
        resolve = lambda v: v._result if isinstance(v, Node) else v

        args = [ resolve(v) for v in self.args ]
        kwargs = { k: resolve(v) for k, v in self.kwargs.items() }

        if bound.is_bound(self.func):
            args.insert(0, self)

        self._result = self.func(*args, **kwargs)
        return self._result


    def entry(self):
        """ JSON-ready record of this node """

        entry = dict(name=self.name, state=self.state, variables=self.variables)

        if self.store_result and self.finished:
            entry['result'] = self._result

        return entry


    def save(self, filename):
        """
            Writes the state of every node of the graph (sorted by name) to
            filename as JSON. Results of OpNodes are left out.
        """

        entries = sorted((node.entry() for node in self.walk()), key=lambda e: e['name'])

        with open(filename, 'w') as f:
            json.dump(entries, f, indent=2, sort_keys=True, default=str)


    def run(self, filename=None):
        """
            Runs every unfinished node of the graph and returns this
            node's result. If filename is given the graph state is saved
            there at the end, also when a node fails.
        """

        order = self.execution_order()

        for node in order:
            if not node.finished:
                node._clear()

        try:
            for node in order:
                if not node.finished:
                    node._execute()
        finally:
            if filename:
                self.save(filename)

        return self._result


    def _execute(self):
        if not self.silent:
            logger.info('START: '.ljust(9) + self.name)

        self.state = Node.State.RUNNING

        try:
            self()
        except Exception:
            self.state = Node.State.ERROR
            self.variables['traceback'] = traceback.format_exc()
            logger.error('ERROR: '.ljust(9) + self.name)
            raise

        self.state = Node.State.FINISHED

        if not self.silent:
            logger.info('END: '.ljust(9) + self.name)


class OpNode(Node):
    """
        Operational node: its result feeds other nodes but is not
        reported (shared operators, gauges, weight sequences).
    """

    store_result = False


class Root(OpNode):
    """
        Groups several nodes under one name; its result is the dict
        {name: result} of the grouped nodes that store results.
    """

    silent = True

    def __init__(self, name, *nodes):
        def collect(*results):
            return {
                node.name: result
                for node, result in zip(nodes, results)
                if node.store_result
            }

        super().__init__(name, collect, *nodes)


    def reset(self):
        """ Resets every node of the graph, not only the root """

        for node in self.walk():
            node._clear()
