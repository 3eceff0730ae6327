from django.test import SimpleTestCase, override_settings

from df_contours.checks import output_settings_check, worker_settings_check


class TestChecks(SimpleTestCase):
    def test_default_settings(self):
        self.assertEqual([], worker_settings_check(None))
        self.assertEqual([], output_settings_check(None))

    @override_settings(CONTOURS_WORKERS="greenlet")
    def test_invalid_workers(self):
        errors = worker_settings_check(None)
        self.assertEqual(["df_contours.E001"], [e.id for e in errors])

    @override_settings(CONTOURS_POOL_SIZE=0, CONTOURS_BLOCK_ROWS="64")
    def test_invalid_sizes(self):
        errors = worker_settings_check(None)
        self.assertEqual(["df_contours.E002", "df_contours.E002"], [e.id for e in errors])

    @override_settings(CONTOURS_CONFIG_DEFAULTS={"cfl": "0.25", "scenario.d": "1", "speed": "2"})
    def test_unknown_defaults(self):
        errors = output_settings_check(None)
        self.assertEqual(["df_contours.E003"], [e.id for e in errors])
        self.assertIn("speed", errors[0].msg)

    @override_settings(CONTOURS_CSV_DIGITS=25)
    def test_invalid_digits(self):
        self.assertEqual(["df_contours.E004"], [e.id for e in output_settings_check(None)])
