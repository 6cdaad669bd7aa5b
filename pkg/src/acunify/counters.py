from dataclasses import asdict, dataclass


@dataclass
class Stats:
    """Operation counters filled in by the algorithms when passed ``stats=``."""

    node_pairs: int = 0
    table_cells: int = 0
    enumerated: int = 0
    ops: int = 0
    max_theta: int = 0

    def as_dict(self) -> dict:
        return asdict(self)
