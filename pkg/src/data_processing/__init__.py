from data_processing.data_loader import (
    DataLoadError,
    LoadedTable,
    load_csv,
    load_schema,
    load_table,
    resolve_dataset,
    standardize,
    subsample,
)

__all__ = [
    "DataLoadError",
    "LoadedTable",
    "load_csv",
    "load_schema",
    "load_table",
    "resolve_dataset",
    "standardize",
    "subsample",
]
