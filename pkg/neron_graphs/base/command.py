from __future__ import annotations

import argparse
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar, Dict, Optional, Type

from ..graph import LabelledGraph

OK, NEGATIVE, INPUT_ERROR, BUDGET_EXCEEDED = 0, 1, 2, 3


@dataclass(frozen=True)
class Outcome:
    """
    What a command produced for one input.

    :param payload: JSON-ready result.
    :type payload: :class:`object`
    :param code: Exit code: ``0`` success or positive verdict, ``1``
        negative verdict.
    :type code: :class:`int`
    :param graph: Graph to render instead when ``--format dot`` is asked for.
    :type graph: :class:`~neron_graphs.graph.LabelledGraph` or ``None``
    """

    payload: Any
    code: int = OK
    graph: Optional[LabelledGraph] = None


class BaseCommand(ABC):
    """
    Base class for all command line subcommands.

    Subclasses define a non-empty class attribute ``name``, the subcommand
    as typed on the command line, and implement :meth:`run`.

    :param name: Class-level subcommand name.
    :type name: :class:`str` or ``None``
    :param help: One-line description shown by ``--help``.
    :type help: :class:`str`
    :param takes_input: The command reads a positional input document, and
        so supports ``--each``.
    :type takes_input: :class:`bool`

    .. note::
       Subclasses are automatically registered in :class:`Registry`
       upon creation via ``__init_subclass__``.
    """

    name: ClassVar[str | None] = None
    help: ClassVar[str] = ""
    takes_input: ClassVar[bool] = True

    def __init_subclass__(cls, **kwargs):
        """
        Check the subcommand name and register the subclass.

        :raises ValueError: If ``name`` is unset, empty or not a string, or
                            is already taken by another command.
        """
        super().__init_subclass__(**kwargs)

        if not isinstance(cls.name, str) or not cls.name:
            raise ValueError(f"command class `{cls.__name__}` needs a non-empty `name`, got {cls.name!r}")

        Registry.register(cls)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare options beyond the shared ones; none by default."""

    @abstractmethod
    def run(self, args: argparse.Namespace, path: Optional[str]) -> Outcome:
        """
        Execute the command on one input.

        :param args: Parsed command line.
        :param path: The input document, ``None`` for commands without one.
        :raises NeronGraphsError: On bad input; mapped to exit code 2.
        :raises CycleBudgetExceeded: Mapped to exit code 3.
        """


class Registry:
    """
    Subcommand classes by name, in definition order.
    """

    _commands: Dict[str, Type[BaseCommand]] = {}

    @classmethod
    def register(cls, command: Type[BaseCommand]) -> None:
        """
        :raises ValueError: If the command name is already taken.
        """
        taken = cls._commands.get(command.name)

        if taken is not None:
            raise ValueError(
                f"command name {command.name!r} used by both `{taken.__name__}` and `{command.__name__}`"
            )

        cls._commands[command.name] = command

    @classmethod
    def get(cls, name: str) -> Type[BaseCommand]:
        return cls._commands[name]

    @classmethod
    def all(cls) -> Dict[str, Type[BaseCommand]]:
        """
        Every registered command class.

        :rtype: :class:`dict` [:class:`str`, :class:`type`]
        """
        return dict(cls._commands)
