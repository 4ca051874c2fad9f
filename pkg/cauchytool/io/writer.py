import csv
import json
import logging
import os
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from cauchytool.util import PathUtil
from cauchytool.walk.pmf import NStepPmf


LOG = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    """
    Convert numpy scalars and non-finite floats into JSON-friendly values.
    """
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


class ResultWriter:
    """
    Writer for result tables, run summaries and pmf dumps.

    Every file carries the fingerprint of the run configuration. Output is
    free of timestamps so that identical runs produce identical bytes.
    """

    def __init__(self, output_path: str, fingerprint: str) -> None:
        """
        Initialize instance.
        """
        self.output_path = output_path
        self.fingerprint = fingerprint
        self.written: List[str] = []

    def path(self, name: str) -> str:
        return os.path.join(self.output_path, name)

    def write_csv(self, name: str, rows: Sequence[Mapping[str, Any]],
                  columns: Optional[Sequence[str]] = None) -> str:
        """
        Write rows as CSV, preceded by a comment line with the config fingerprint.
        """
        if columns is None:
            if not rows:
                raise ValueError("Cannot infer columns of empty table {}".format(name))
            columns = list(rows[0].keys())

        path = self.path(name)
        PathUtil.ensure_base_path_exists(path)
        with open(path, 'w', newline='') as dst:
            dst.write('# config={}\n'.format(self.fingerprint))
            writer = csv.DictWriter(dst, fieldnames=list(columns), extrasaction='raise', lineterminator='\n')
            writer.writeheader()
            for row in rows:
                writer.writerow({key: self._cell(row.get(key)) for key in columns})

        LOG.info("Wrote %d rows to %s", len(rows), path)
        self.written.append(path)
        return path

    def write_columns(self, name: str, columns: Mapping[str, np.ndarray], header: Mapping[str, Any]) -> str:
        """
        Write equally long arrays as whitespace separated columns under a `#` header.
        """
        names = list(columns.keys())
        length = len(columns[names[0]])
        for key in names:
            if len(columns[key]) != length:
                raise ValueError("Column {} has length {}, expected {}".format(key, len(columns[key]), length))

        path = self.path(name)
        PathUtil.ensure_base_path_exists(path)
        meta = ' '.join('{}={}'.format(key, header[key]) for key in header)
        with open(path, 'w') as dst:
            dst.write('# {} config={}\n'.format(meta, self.fingerprint))
            dst.write('# {}\n'.format(' '.join(names)))
            for index in range(length):
                dst.write(' '.join(self._cell(columns[key][index]) for key in names))
                dst.write('\n')

        LOG.info("Wrote %d lines to %s", length, path)
        self.written.append(path)
        return path

    def write_pmf(self, name: str, pmf: NStepPmf) -> str:
        """
        Columnar (offset, probability) dump with n, x_max and truncation_loss in the header.
        """
        return self.write_columns(
            name,
            {'offset': pmf.offsets, 'probability': pmf.probs},
            {'n': pmf.n, 'x_max': pmf.x_max, 'truncation_loss': repr(pmf.truncation_loss)},
        )

    def write_summary(self, name: str, summary: Dict[str, Any]) -> str:
        """
        JSON summary with sorted keys.
        """
        payload = dict(summary)
        payload['config_fingerprint'] = self.fingerprint

        path = self.path(name)
        PathUtil.ensure_base_path_exists(path)
        with open(path, 'w') as dst:
            json.dump(_plain(payload), dst, sort_keys=True, indent=2)
            dst.write('\n')

        LOG.info("Wrote summary %s", path)
        self.written.append(path)
        return path

    @staticmethod
    def _cell(value: Any) -> str:
        if value is None:
            return ''
        if isinstance(value, (float, np.floating)):
            return repr(float(value))
        if isinstance(value, np.integer):
            return str(int(value))
        return str(value)
