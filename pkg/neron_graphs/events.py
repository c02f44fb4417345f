from pyee.base import EventEmitter

"""
This module provides a shared application-wide event emitter.

It exposes a single :class:`pyee.base.EventEmitter` instance
named :data:`event_bus`. Library operations emit on it so that callers
(the CLI, a notebook, a test) can observe refinements, transports and
alignment counterexamples without the operations themselves logging.

Channels:

- ``"refine.basic"`` — ``(BasicRefinementSpec, LabelledGraph)`` after a basic refinement
- ``"refine.resolved"`` — ``(LabelledGraph, int)`` when :func:`resolve` finishes
- ``"align.counterexample"`` — ``(CycleWitness,)`` for every failing cycle
- ``"family.transport"`` — ``(point id, BasicRefinementSpec | None)`` per reached point
"""
event_bus = EventEmitter()
