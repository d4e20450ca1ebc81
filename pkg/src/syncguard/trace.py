"""Line-delimited trace files: one record per tick.

Fields are tab-separated: tick index, observed event, released event,
input-edited flag, output-edited flag, location after the tick.  Events
render as ``inputs/outputs`` bit strings in declaration order.  Lines
starting with ``#`` are comments.  All content is deterministic, so two
runs with identical configuration produce byte-identical files.
"""

from __future__ import annotations

from typing import IO, Iterable, Sequence

from .bits import Event
from .runtime import TickRecord


def format_record(record: TickRecord) -> str:
    return "\t".join(
        (
            str(record.t),
            str(record.observed),
            str(record.released),
            str(int(record.input_edited)),
            str(int(record.output_edited)),
            record.state_after,
        )
    )


def parse_record(line: str) -> TickRecord:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 6:
        raise ValueError(f"expected 6 tab-separated fields, got {len(fields)}: {line!r}")
    t, observed, released, input_edited, output_edited, state = fields
    return TickRecord(
        t=int(t),
        observed=Event.from_text(observed),
        released=Event.from_text(released),
        input_edited=bool(int(input_edited)),
        output_edited=bool(int(output_edited)),
        state_after=state,
    )


def write_trace(
    stream: IO[str],
    records: Iterable[TickRecord],
    header: Sequence[str] = (),
) -> None:
    for line in header:
        stream.write(f"# {line}\n")
    for record in records:
        stream.write(format_record(record) + "\n")


def read_trace(text: str) -> list[TickRecord]:
    records = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        records.append(parse_record(line))
    return records
