# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#

import io
import json
import logging
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Sequence, Type

import blake3
import pandas as pd
from openpyxl import Workbook

from .solver import OptimalCloneResult
from .states import DomainError

DIGEST_SIZE = 28
REAL_FORMAT = "%.17g"


@dataclass(frozen=True)
class OutputRecord:
    theta1: float
    theta2: float
    alpha: float
    beta: float
    fbar: float
    branch: str
    K: float
    P: float
    Q: float
    R: float


@dataclass(frozen=True)
class ProfileRecord:
    theta: float
    fidelity: float


def record_from_result(result: OptimalCloneResult) -> OutputRecord:
    consts = result.constants
    return OutputRecord(
        theta1=result.belt.theta1,
        theta2=result.belt.theta2,
        alpha=result.angles.alpha,
        beta=result.angles.beta,
        fbar=result.fbar,
        branch=result.branch.value,
        K=consts.K,
        P=consts.P,
        Q=consts.Q,
        R=consts.R,
    )


def field_names(record_type: Type = OutputRecord) -> List[str]:
    return [field.name for field in fields(record_type)]


def format_real(value: float) -> str:
    """17 significant digits, locale independent."""
    return REAL_FORMAT % float(value)


def _frame(records: Iterable, record_type: Type) -> pd.DataFrame:
    frame = pd.DataFrame([astuple(record) for record in records], columns=field_names(record_type))
    for field in fields(record_type):
        if field.type is not str:
            frame[field.name] = frame[field.name].astype(float)
    return frame


def encode_csv(records: Iterable, record_type: Type = OutputRecord) -> str:
    """
    Encodes records as CSV: a header line with the field names, then one line per record.

    Reals carry 17 significant digits (see format_real) and lines end with a
    single newline character on every platform.
    """
    return _frame(records, record_type).to_csv(
        index=False, float_format=REAL_FORMAT, lineterminator="\n"
    )


def encode_json(records: Iterable, record_type: Type = OutputRecord) -> str:
    names = field_names(record_type)
    payload = [dict(zip(names, astuple(record))) for record in records]
    return json.dumps(payload, indent=2) + "\n"


def _parse_record(values: dict, record_type: Type):
    parsed = {}
    for field in fields(record_type):
        if field.name not in values:
            raise DomainError(f"read_records: missing field '{field.name}'")
        raw = values[field.name]
        parsed[field.name] = str(raw) if field.type is str else float(raw)
    return record_type(**parsed)


def read_csv(text: str, record_type: Type = OutputRecord) -> List:
    """
    Decodes the output of encode_csv.

    :raises DomainError: If the text is empty or the header does not list exactly the record fields
    """
    text_fields = {field.name: str for field in fields(record_type) if field.type is str}
    try:
        frame = pd.read_csv(
            io.StringIO(text),
            dtype=text_fields,
            float_precision="round_trip",
            keep_default_na=False,
        )
    except pd.errors.EmptyDataError as e:
        raise DomainError("read_csv: no header line") from e
    expected = field_names(record_type)
    if list(frame.columns) != expected:
        raise DomainError(f"read_csv: header {list(frame.columns)} differs from {expected}")
    return [_parse_record(row, record_type) for row in frame.to_dict(orient="records")]


def read_json(text: str, record_type: Type = OutputRecord) -> List:
    payload = json.loads(text)
    if not isinstance(payload, list):
        raise DomainError("read_json: expected a JSON array of records")
    expected = set(field_names(record_type))
    records = []
    for item in payload:
        if not isinstance(item, dict) or set(item) != expected:
            raise DomainError(f"read_json: record fields differ from {sorted(expected)}")
        records.append(_parse_record(item, record_type))
    return records


def write_xlsx(records: Sequence, path, record_type: Type = OutputRecord) -> Path:
    """
    Writes the records to a workbook with a single `records` sheet.

    :param records: Records to write, one row each after the header row
    :param path: Destination file
    :return: The destination path
    """
    workbook = Workbook()
    sheet = workbook.active
    sheet.title = "records"
    sheet.append(field_names(record_type))
    for record in records:
        sheet.append(list(astuple(record)))

    target = Path(path)
    workbook.save(target)
    logging.debug(f"write_xlsx: {len(records)} record(s) --> {target}")
    return target


def content_digest(text: str, digest_size: int = DIGEST_SIZE) -> str:
    """Stable blake3 digest of a text, prefixed with its length before hashing."""
    hash_input = f"{len(text)}|{text}".encode()
    return blake3.blake3(hash_input).hexdigest(length=digest_size)


def records_digest(records: Iterable, record_type: Type = OutputRecord) -> str:
    """Digest of the canonical CSV encoding of the records."""
    return content_digest(encode_csv(records, record_type))
