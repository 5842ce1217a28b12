"""Tests for the equivalence fuzz corpus, runner and hooks."""

import unittest
from collections import Counter
from unittest.mock import patch

from osslab.exceptions import ConfigError
from osslab.fuzz import CORPUS_WEIGHTS, FuzzRunner, corpus_spec, kind_schedule, run_fuzz
from osslab.hooks import logging_hook_post, logging_hook_pre, timing_hook
from osslab.models import CheckReport, SampleConfig


class TestCorpus(unittest.TestCase):
    def test_deterministic(self):
        for trial in range(10):
            self.assertEqual(corpus_spec(4, trial, 7), corpus_spec(4, trial, 7))

    def test_kinds_per_dimension(self):
        kinds = {corpus_spec(3, t, 0).kind for t in range(30)}
        self.assertEqual(kinds, set(CORPUS_WEIGHTS[3]))
        self.assertNotIn("canonical", kinds)
        kinds = {corpus_spec(4, t, 0).kind for t in range(22)}
        self.assertEqual(kinds, set(CORPUS_WEIGHTS[4]))

    def test_dimension_four_quota(self):
        counts = Counter(corpus_spec(4, t, 0).kind for t in range(220))
        self.assertEqual(counts, {"canonical": 50, "space-form": 20, "random": 100, "perturbed": 50})

    def test_dimension_three_quota(self):
        counts = Counter(corpus_spec(3, t, 5).kind for t in range(150))
        self.assertEqual(counts, {"space-form": 50, "random": 60, "perturbed": 40})

    def test_quota_does_not_depend_on_seed(self):
        kinds = [corpus_spec(4, t, 0).kind for t in range(44)]
        self.assertEqual(kinds, [corpus_spec(4, t, 99).kind for t in range(44)])

    def test_schedule_spreads_kinds(self):
        order = kind_schedule({"a": 1, "b": 3})
        self.assertEqual(sorted(order), ["a", "b", "b", "b"])
        self.assertEqual(order.count("a"), 1)
        self.assertNotEqual(order[:2], ["a", "a"])

    def test_canonical_includes_repeated_eigenvalues(self):
        specs = [corpus_spec(4, t, 0) for t in range(220)]
        lambdas = [s.lambdas for s in specs if s.kind == "canonical"]
        self.assertTrue(any(len(set(lam)) < 3 for lam in lambdas))

    def test_positives_are_rotated(self):
        for t in range(40):
            spec = corpus_spec(4, t, 1, kinds=["canonical"])
            self.assertEqual(spec.kind, "canonical")
            self.assertIsNotNone(spec.rotation_seed)

    def test_restricted_kinds(self):
        self.assertEqual(corpus_spec(3, 0, 0, kinds=["space-form"]).kind, "space-form")
        with self.assertRaises(ConfigError):
            corpus_spec(3, 0, 0, kinds=["canonical"])

    def test_unsupported_dimension(self):
        with self.assertRaises(ConfigError):
            corpus_spec(5, 0, 0)


class TestFuzzRunner(unittest.TestCase):
    def test_dimension_four_agreement(self):
        summary = run_fuzz(4, 220, seed=0, cfg=SampleConfig(count=30, seed=0))
        self.assertEqual(summary.agreements, 220)
        self.assertTrue(summary.ok)
        for t in summary.trials:
            self.assertTrue(t.report.exact_consistent)

    def test_dimension_three_agreement(self):
        summary = run_fuzz(3, 150, seed=0, cfg=SampleConfig(count=30, seed=0))
        self.assertEqual(summary.agreements, 150)
        self.assertEqual(summary.to_dict()["disagreements"], 0)
        passing = [t for t in summary.trials if t.report.osserman.passed]
        self.assertTrue(passing)
        for t in passing:
            self.assertTrue(t.report.isotropic.passed, t.trial)

    def test_dimension_three_requires_isotropy(self):
        failing = CheckReport.build("isotropy", 1.0, 1e-8)
        with patch("osslab.checkers._isotropy_report", return_value=failing):
            summary = run_fuzz(3, 5, cfg=SampleConfig(count=5, seed=0), kinds=["space-form"])
        self.assertEqual(summary.agreements, 0)
        self.assertFalse(summary.ok)
        self.assertFalse(summary.trials[0].to_dict()["consistent"])

    def test_hooks_run_in_order(self):
        calls = []
        runner = FuzzRunner(3, 2, seed=4, cfg=SampleConfig(count=5, seed=4))
        runner.add_hook("pre", lambda trial, spec: calls.append(("pre", trial)))
        runner.add_hook("post", lambda trial, spec, report: calls.append(("post", trial)))
        runner.run()
        self.assertEqual(calls, [("pre", 0), ("post", 0), ("pre", 1), ("post", 1)])

    def test_bad_hook_stage(self):
        with self.assertRaises(ValueError):
            FuzzRunner(3, 1).add_hook("during", print)

    def test_workers_preserve_order(self):
        cfg = SampleConfig(count=5, seed=2)
        serial = FuzzRunner(4, 6, seed=2, cfg=cfg).run()
        parallel = FuzzRunner(4, 6, seed=2, cfg=cfg, workers=3).run()
        self.assertEqual([t.to_dict() for t in serial.trials], [t.to_dict() for t in parallel.trials])

    def test_validation(self):
        with self.assertRaises(ConfigError):
            FuzzRunner(4, 0)
        with self.assertRaises(ConfigError):
            FuzzRunner(4, 1, workers=0)

    def test_logging_hooks(self):
        runner = FuzzRunner(3, 1, cfg=SampleConfig(count=5, seed=0), kinds=["space-form"])
        runner.add_hook("pre", logging_hook_pre)
        runner.add_hook("post", logging_hook_post)
        pre, post = timing_hook()
        runner.add_hook("pre", pre)
        runner.add_hook("post", post)
        with self.assertLogs("osslab.hooks", level="INFO") as logs:
            runner.run()
        self.assertEqual(len(logs.output), 3)
        self.assertTrue(any("took" in line for line in logs.output))


if __name__ == "__main__":
    unittest.main()
