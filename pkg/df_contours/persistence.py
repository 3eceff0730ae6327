# ##############################################################################
#  This file is part of df_contours                                            #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
"""Output files of a run
=====================

A run directory holds:

  * `config.txt`: the canonical configuration,
  * `series.csv`: one row per record, then a `#status: ok|splash|error:<code>` trailer,
  * `snapshots/snapshot_<record>.csv`: the state at each record,
  * `certificate.csv` and `certificate.json`: the certificate columns and its summary (only
    when the series can be certified).

Numbers are written with `CONTOURS_CSV_DIGITS` significant digits so that repeated runs give
identical files.
"""
import io
import logging
import os
import warnings
from typing import List, Optional, Sequence

import numpy as np

from df_contours import constants, ct_settings
from df_contours.config import serialize_config
from df_contours.exceptions import MalformedSeriesError, PersistenceError
from df_contours.splash_monitor import BoundCertificate, TimeSeries

logger = logging.getLogger("df_contours.io")


def _number_format() -> str:
    return "%%.%dg" % ct_settings.CONTOURS_CSV_DIGITS


def format_table(columns: Sequence[str], rows: np.ndarray, trailer: Optional[str] = None) -> str:
    rows = np.asarray(rows, dtype=float).reshape(-1, len(columns))
    buffer = io.StringIO()
    np.savetxt(
        buffer, rows, fmt=_number_format(), delimiter=",", header=",".join(columns), comments=""
    )
    if trailer is not None:
        buffer.write(trailer + "\n")
    return buffer.getvalue()


def _write(path: str, content: str) -> str:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fd:
            fd.write(content)
    except OSError as e:
        raise PersistenceError(e.strerror or str(e), path=path)
    logger.debug("%s written", path)
    return path


def series_table(series: TimeSeries) -> str:
    rows = np.column_stack([series.columns()[name] for name in constants.SERIES_COLUMNS])
    return format_table(
        constants.SERIES_COLUMNS, rows, trailer=constants.STATUS_PREFIX + series.status
    )


def certificate_table(certificate: BoundCertificate) -> str:
    columns = certificate.series.columns()
    columns["envelope"] = certificate.envelope
    rows = np.column_stack(
        [columns[name] for name in constants.SERIES_COLUMNS]
        + [certificate.margin, certificate.applicable.astype(float)]
    )
    return format_table(constants.CERTIFICATE_COLUMNS, rows)


def snapshot_table(snapshot: np.ndarray, contour: bool) -> str:
    columns = constants.CONTOUR_SNAPSHOT_COLUMNS if contour else constants.GRAPH_SNAPSHOT_COLUMNS
    return format_table(columns, np.asarray(snapshot).T)


def write_outputs(
    directory: str,
    series: TimeSeries,
    certificate: Optional[BoundCertificate] = None,
    config=None,
    snapshots: Sequence[np.ndarray] = (),
    contour: bool = False,
) -> List[str]:
    """Write the run files into `directory` and return their paths.

    :raises PersistenceError: on any I/O failure, naming the path
    """
    snapshot_dir = os.path.join(directory, constants.SNAPSHOT_DIRNAME)
    try:
        os.makedirs(snapshot_dir if snapshots else directory, exist_ok=True)
    except OSError as e:
        raise PersistenceError(e.strerror or str(e), path=directory)
    written = []
    if config is not None:
        written.append(
            _write(os.path.join(directory, constants.CONFIG_FILENAME), serialize_config(config))
        )
    written.append(_write(os.path.join(directory, constants.SERIES_FILENAME), series_table(series)))
    for index, snapshot in enumerate(snapshots):
        path = os.path.join(snapshot_dir, constants.SNAPSHOT_PATTERN % index)
        written.append(_write(path, snapshot_table(snapshot, contour)))
    if certificate is not None:
        written += write_certificate(directory, certificate)
    logger.info("%d files written to %s", len(written), directory)
    return written


def write_certificate(directory: str, certificate: BoundCertificate) -> List[str]:
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise PersistenceError(e.strerror or str(e), path=directory)
    return [
        _write(
            os.path.join(directory, constants.CERTIFICATE_FILENAME), certificate_table(certificate)
        ),
        _write(os.path.join(directory, constants.SUMMARY_FILENAME), certificate.to_json()),
    ]


def parse_series(text: str, source: str = "<series>") -> TimeSeries:
    """Read a series (or certificate) table; the status trailer is optional."""
    lines = text.splitlines()
    if not lines:
        raise MalformedSeriesError("%s: empty file" % source)
    header = [x.strip() for x in lines[0].split(",")]
    missing = [name for name in constants.SERIES_COLUMNS if name not in header]
    if missing:
        raise MalformedSeriesError("%s: missing columns %s" % (source, ", ".join(missing)))
    status = constants.STATUS_OK
    for line in lines[1:]:
        if line.startswith(constants.STATUS_PREFIX):
            status = line[len(constants.STATUS_PREFIX) :].strip()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            data = np.loadtxt(
                io.StringIO("\n".join(lines[1:])), delimiter=",", comments="#", ndmin=2
            )
    except ValueError as e:
        raise MalformedSeriesError("%s: %s" % (source, e))
    if data.size == 0:
        return TimeSeries.empty(status)
    if data.shape[1] != len(header):
        raise MalformedSeriesError("%s: rows do not match the header" % source)
    columns = {name: data[:, header.index(name)] for name in constants.SERIES_COLUMNS}
    return TimeSeries(status=status, **columns)


def read_series_csv(path: str) -> TimeSeries:
    try:
        with open(path, encoding="utf-8") as fd:
            text = fd.read()
    except OSError as e:
        raise PersistenceError(e.strerror or str(e), path=path)
    return parse_series(text, source=path)
