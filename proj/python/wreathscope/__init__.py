"""Hyperbolic structures on lamplighter groups G wr Z.

Groups, structures, elements and Q-specs are passed as text, e.g.
``poset("Z12")``, ``wordlen("Z2", "qp+:{}", "t^-3 a t^3")``,
``check("qh:Z4:{2}")``. Report-style calls return decoded JSON.
"""

import json

from . import _core
from ._core import (
    BoundExceeded,
    GroupMismatch,
    ParseError,
    PreconditionViolated,
    WindowExceeded,
    WreathscopeError,
    bfs_wordlen,
    busemann,
    group_order,
    inverse,
    multiply,
    normalize,
    poset_dot,
    qp_count,
    subgroups,
    wordlen,
)

__all__ = [
    "BoundExceeded",
    "GroupMismatch",
    "ParseError",
    "PreconditionViolated",
    "WindowExceeded",
    "WreathscopeError",
    "bfs_wordlen",
    "busemann",
    "check",
    "compare",
    "contains",
    "delta",
    "group_order",
    "inverse",
    "multiply",
    "normalize",
    "plan",
    "poset",
    "poset_dot",
    "qp_count",
    "qspec",
    "recover",
    "saturate",
    "subgroups",
    "validate",
    "wordlen",
]


def _qspec_text(q):
    return q if isinstance(q, str) else json.dumps(q)


def poset(group):
    return json.loads(_core.poset_json(group))


def plan(group, structure, element):
    return json.loads(_core.plan_json(group, structure, element))


def compare(group, x, y, window=3, depth=20):
    return json.loads(_core.compare_json(group, x, y, window, depth))


def delta(group, structure, radius, samples=2000, seed=0):
    return json.loads(_core.delta_json(group, structure, radius, samples, seed))


def qspec(q):
    return json.loads(_core.qspec_json(_qspec_text(q)))


def contains(q, config):
    return _core.contains(_qspec_text(q), config)


def check(q, direction="t", window=4, n0_max=4, seed=0):
    return json.loads(_core.check_json(_qspec_text(q), direction, window, n0_max, seed))


def saturate(q, window=4, iteration_cap=20000):
    return json.loads(_core.saturate_json(_qspec_text(q), window, iteration_cap))


def recover(q, window=8, depth=-1):
    return json.loads(_core.recover_json(_qspec_text(q), window, depth))


def validate(q, subgroup, depth=20):
    return json.loads(_core.validate_json(_qspec_text(q), subgroup, depth))
