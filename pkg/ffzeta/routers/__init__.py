"""
Command groups of the ``ffzeta`` command line. Each module exposes a
``router`` whose commands ``main`` mounts as subcommands.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple


def arg(*flags, **kwargs) -> Tuple[Tuple[str, ...], dict]:
    return flags, kwargs


@dataclass
class Command:
    name: str
    handler: Callable
    help: str
    args: List[Tuple[Tuple[str, ...], dict]] = field(default_factory=list)
    response_model: Optional[Any] = None


class CommandRouter:

    def __init__(self, tags=None):
        self.tags = tags or []
        self.commands: List[Command] = []

    def command(self, name, help=None, args=(), response_model=None):
        def decorator(fn):
            doc = (fn.__doc__ or '').strip()
            self.commands.append(Command(name, fn, help or doc, list(args),
                                         response_model))
            return fn
        return decorator
