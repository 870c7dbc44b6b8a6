from reporting.summary_tables import (
    emit,
    emit_sweep,
    print_assumption_table,
    print_coreset_summary_table,
    print_experiment_table,
)

__all__ = [
    "emit",
    "emit_sweep",
    "print_assumption_table",
    "print_coreset_summary_table",
    "print_experiment_table",
]
