"""Unit tests for report records, configs and the check instrumentation."""

import unittest

from osslab.checkers import osserman_check_sampled
from osslab.decorators import traced
from osslab.exceptions import ConfigError, OsslabError
from osslab.fourdim import canonical_osserman
from osslab.models import CheckReport, EquivalenceReport, EigStructureCase, SampleConfig, Witness


class TestCheckReport(unittest.TestCase):
    def test_pass_iff_within_threshold(self):
        self.assertTrue(CheckReport.build("x", 2e-8, 1e-8, scale=2.0).passed)
        self.assertFalse(CheckReport.build("x", 2.1e-8, 1e-8, scale=2.0).passed)

    def test_pass_drops_witness(self):
        report = CheckReport.build("x", 0.0, 1e-8, witness=Witness(0.0, detail="unused"))
        self.assertIsNone(report.witness)

    def test_fail_always_has_witness(self):
        report = CheckReport.build("x", 1.0, 1e-8)
        self.assertEqual(report.witness.residual, 1.0)
        self.assertEqual(report.verdict, "fail")

    def test_marginal_band(self):
        self.assertTrue(CheckReport.build("x", 5e-9, 1e-8).marginal)
        self.assertTrue(CheckReport.build("x", 5e-8, 1e-8).marginal)
        self.assertFalse(CheckReport.build("x", 1e-10, 1e-8).marginal)
        self.assertFalse(CheckReport.build("x", 1.0, 1e-8).marginal)

    def test_dict_round_trip(self):
        report = CheckReport.build("duality", 0.25, 1e-8, scale=3.0, samples=7,
                                   witness=Witness(0.25, direction=[0.0, 1.0], eigenvalue=2.0, detail="d"))
        data = report.to_dict()
        self.assertEqual(data["maxResidual"], 0.25)
        self.assertEqual(CheckReport.from_dict(data), report)


class TestEquivalenceReport(unittest.TestCase):
    def test_marginal_and_dict(self):
        report = EquivalenceReport(
            duality=CheckReport.build("duality", 5e-8, 1e-8),
            osserman=CheckReport.build("osserman", 0.0, 1e-8),
            agree=False,
        )
        self.assertTrue(report.marginal)
        data = report.to_dict()
        self.assertFalse(data["agree"])
        self.assertNotIn("exact", data)

    def test_passing_osserman_needs_isotropy(self):
        passing = CheckReport.build("osserman", 0.0, 1e-8)
        report = EquivalenceReport(
            duality=CheckReport.build("duality", 0.0, 1e-8),
            osserman=passing,
            agree=True,
            isotropic=CheckReport.build("isotropy", 0.5, 1e-8),
        )
        self.assertFalse(report.consistent)
        report.isotropic = CheckReport.build("isotropy", 0.0, 1e-8)
        self.assertTrue(report.consistent)

    def test_failing_osserman_ignores_isotropy(self):
        report = EquivalenceReport(
            duality=CheckReport.build("duality", 1.0, 1e-8),
            osserman=CheckReport.build("osserman", 1.0, 1e-8),
            agree=True,
            isotropic=CheckReport.build("isotropy", 1.0, 1e-8),
        )
        self.assertTrue(report.consistent)


class TestConfigs(unittest.TestCase):
    def test_sample_config_validation(self):
        with self.assertRaises(ConfigError):
            SampleConfig(count=0)
        with self.assertRaises(ConfigError):
            SampleConfig(eigenspace_probes=-1)

    def test_sample_config_from_dict(self):
        cfg = SampleConfig.from_dict({"count": 12, "seed": 4, "unknown": True})
        self.assertEqual((cfg.count, cfg.seed), (12, 4))

    def test_config_error_is_osslab_error(self):
        self.assertTrue(issubclass(ConfigError, OsslabError))

    def test_structure_case(self):
        self.assertTrue(EigStructureCase("e").matched)
        self.assertFalse(EigStructureCase("none").matched)


class TestTraced(unittest.TestCase):
    def test_logs_verdict(self):
        with self.assertLogs("osslab.decorators", level="DEBUG") as logs:
            osserman_check_sampled(canonical_osserman(1.0, 2.0, 3.0), SampleConfig(count=3, seed=0))
        self.assertTrue(any("osserman -> pass" in line for line in logs.output))

    def test_reraises(self):
        @traced()
        def broken():
            raise ConfigError("bad")

        with self.assertLogs("osslab.decorators", level="DEBUG") as logs:
            with self.assertRaises(ConfigError):
                broken()
        self.assertTrue(any("broken failed" in line for line in logs.output))

    def test_preserves_metadata(self):
        self.assertEqual(osserman_check_sampled.__name__, "osserman_check_sampled")


if __name__ == "__main__":
    unittest.main()
