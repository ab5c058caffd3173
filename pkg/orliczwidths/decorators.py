import inspect
from functools import wraps


def bound(func):
    """
        Marks func as bound: when it runs inside a Node, the node itself
        is passed as the first argument (suites keep their counterexamples
        in node.variables).
    """

    func.__bound__ = True
    return func

bound.is_bound = lambda func: getattr(func, '__bound__', False)


def task(name, node_class=None):
    """
        Turns a function into a Node factory.

            @task('verify.lp_agreement.{seed}')
            def lp_agreement(seed, vectors=500):
                ...

            lp_agreement(7)   # Node('verify.lp_agreement.7', lp_agreement, 7)

        The name is formatted with the arguments of the call (defaults
        are not filled in); Node arguments are formatted by their name.
        The plain function stays available as `.func`.
    """

    from .node import Node

    node_class = node_class or Node

    def dec(func):
        signature = inspect.signature(func)

        if bound.is_bound(func):
            parameters = list(signature.parameters.values())[1:]
            signature = signature.replace(parameters=parameters)

        @wraps(func)
        def factory(*args, **kwargs):
            arguments = signature.bind_partial(*args, **kwargs).arguments

            fields = {
                key: value.name if isinstance(value, Node) else value
                for key, value in arguments.items()
            }

            return node_class(name.format(**fields), func, *args, **kwargs)

        factory.func = func
        return factory

    return dec
