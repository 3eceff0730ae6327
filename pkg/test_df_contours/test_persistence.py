import json
import os
import tempfile
from unittest import TestCase

import numpy as np

from df_contours.config import load_config_text
from df_contours.exceptions import MalformedSeriesError, PersistenceError
from df_contours.persistence import parse_series, read_series_csv, series_table, write_outputs
from df_contours.splash_monitor import TimeSeries, certify


def make_series(count=5, status="ok"):
    t = np.linspace(0.0, 0.4, count)
    S = 0.05 + 0.01 * t
    columns = [t, S, np.zeros(count), np.ones(count), np.ones(count), np.ones(count)]
    columns += [np.full(count, np.nan), np.full(count, 3.0), np.full(count, np.nan)]
    return TimeSeries(*columns, status=status)


class TestSeriesTable(TestCase):
    def test_empty(self):
        text = series_table(TimeSeries.empty())
        self.assertEqual(
            "t,S,alpha_min,sup_f2,sup_g2,curvature_max,chord_arc,C_mon,envelope\n#status: ok\n",
            text,
        )
        self.assertEqual(0, len(parse_series(text)))

    def test_parse(self):
        series = make_series(status="error:numerical")
        parsed = parse_series(series_table(series))
        self.assertEqual("error:numerical", parsed.status)
        np.testing.assert_array_equal(series.S, parsed.S)
        self.assertTrue(np.all(np.isnan(parsed.chord_arc)))

    def test_missing_column(self):
        self.assertRaises(MalformedSeriesError, lambda: parse_series("t,S\n0,1\n"))

    def test_ragged(self):
        text = series_table(make_series()).replace("#status", "1,2,3\n#status")
        self.assertRaises(MalformedSeriesError, lambda: parse_series(text))


class TestWriteOutputs(TestCase):
    def test_files(self):
        config = load_config_text("system = sqg_contour\nscenario = circle\n", defaults={})
        series = make_series()
        snapshot = np.vstack([np.linspace(-np.pi, np.pi, 16, endpoint=False)] * 3)
        with tempfile.TemporaryDirectory() as dirname:
            written = write_outputs(
                dirname, series, certify(series), config=config, snapshots=[snapshot], contour=True
            )
            names = sorted(os.path.relpath(path, dirname) for path in written)
            self.assertEqual(
                [
                    "certificate.csv",
                    "certificate.json",
                    "config.txt",
                    "series.csv",
                    os.path.join("snapshots", "snapshot_00000.csv"),
                ],
                names,
            )
            with open(os.path.join(dirname, "certificate.json")) as fd:
                self.assertEqual("pass", json.load(fd)["verdict_inequality"])
            with open(written[-3]) as fd:
                self.assertEqual("alpha,x1,x2", fd.readline().strip())
            parsed = read_series_csv(os.path.join(dirname, "series.csv"))
            np.testing.assert_array_equal(series.t, parsed.t)

    def test_unwritable(self):
        with tempfile.TemporaryDirectory() as dirname:
            blocker = os.path.join(dirname, "file")
            with open(blocker, "w") as fd:
                fd.write("")
            with self.assertRaises(PersistenceError) as cm:
                write_outputs(os.path.join(blocker, "run"), make_series())
            self.assertIn("file", str(cm.exception))

    def test_missing_file(self):
        self.assertRaises(PersistenceError, lambda: read_series_csv("/nonexistent/series.csv"))
