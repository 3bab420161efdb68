"""
Command Line Handlers
Graph, degree and morphism command handlers.
"""

from quasistab.handlers.commands import (
    validate_command,
    classify_command,
    status_command,
    info_command,
    export_dot_command,
    dm_check_command,
)
from quasistab.handlers.degrees import (
    check_balanced_command,
    enumerate_command,
    twist_command,
    criteria_command,
    criterion_names,
)
from quasistab.handlers.morphisms import (
    contract_command,
    stabilize_command,
    stable_model_command,
    strip_command,
    lift_command,
    forget_all_command,
    fibers_command,
)

__all__ = [
    'validate_command',
    'classify_command',
    'status_command',
    'info_command',
    'export_dot_command',
    'dm_check_command',
    'check_balanced_command',
    'enumerate_command',
    'twist_command',
    'criteria_command',
    'criterion_names',
    'contract_command',
    'stabilize_command',
    'stable_model_command',
    'strip_command',
    'lift_command',
    'forget_all_command',
    'fibers_command',
]
