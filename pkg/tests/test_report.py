import pytest

from weylgraphs.errors import StructureError
from weylgraphs.report import (CENSUS, KV, TEXT, TIME_LIMIT_SECONDS, VerificationSuite,
                               format_value, strong_star, subdivided_complete)


def entries(suite):
    return dict(suite.entries)


class TestFormatValue:
    @pytest.mark.parametrize('value, text', [
        (True, 'true'),
        (False, 'false'),
        (float('inf'), 'inf'),
        ((3, 3), '3,3'),
        ([6, 6, 2], '6,6,2'),
        ([], ''),
        (None, 'none'),
        (576, '576'),
        ('PASS', 'PASS'),
    ])
    def test_values(self, value, text):
        assert format_value(value) == text


class TestHelpers:
    def test_subdivided_complete(self):
        G = subdivided_complete(4)
        assert G.n == 4 + 6
        assert sorted(G.degree(v) for v in range(G.n)) == [2] * 6 + [3] * 4

    def test_strong_star(self):
        star = strong_star()
        assert len(star) == 4
        assert star.bivalencies() == [6, 2, 2, 2]

    def test_census_covers_every_family(self):
        assert {label for label, *_ in CENSUS} == set('ABCDEFG')


class TestSteps:
    def test_f4_dichotomy(self):
        suite = VerificationSuite()
        suite.run_f4_dichotomy()
        assert suite.passed
        values = entries(suite)
        assert values['f4.wf4.aut_order'] == '576'
        assert values['f4.twisted.orbits'] == '12,12'
        assert values['f4.weyl_group_order'] == '1152'
        assert values['f4.conjugation_image_order'] == '576'

    def test_tightness(self):
        suite = VerificationSuite()
        suite.run_tightness()
        assert suite.passed
        assert entries(suite)['tight.mu'] == '3,3'

    def test_b4_and_bn(self):
        suite = VerificationSuite()
        suite.run_b4()
        suite.run_bn_structure()
        assert suite.passed
        assert entries(suite)['b4.subdivided_k7.vertices'] == '112'
        assert entries(suite)['bn.alternating_sum.n9'] == '72'

    def test_cotriangular(self):
        suite = VerificationSuite()
        suite.run_cotriangular()
        assert suite.passed, [name for _, name, ok in suite.checks if not ok]
        values = entries(suite)
        assert values['cotriangular.C5'] == 'false'
        assert values['cotriangular.nonsingular.+8'] == '120'
        assert 'cotriangular.K(4,2).completely_reduced' not in values

    def test_relabeling(self):
        suite = VerificationSuite(seed=11, relabel_rounds=5)
        suite.run_relabeling()
        assert suite.passed
        assert entries(suite)['relabel.rounds'] == '5'

    def test_invariants_default_instances(self):
        suite = VerificationSuite()
        suite.run_invariants()
        assert suite.passed
        assert set(suite.f4_instances) == {'WF4', 'twisted_WF4'}


class TestRun:
    def test_aborted_step_is_one_failed_check(self, monkeypatch):
        def broken(self):
            raise StructureError("no clique partition")
        suite = VerificationSuite()
        monkeypatch.setattr(VerificationSuite, 'steps',
                            lambda self: [('bn', self.run_bn_structure), ('f4', lambda: broken(self))])
        assert suite.run() is False
        values = entries(suite)
        assert values['f4.completed'] == 'false'
        assert values['summary.failed'] == '1'
        assert values['summary.failed_checks'] == 'f4.completed'
        assert values['summary.status'] == 'FAIL'

    def test_renderings(self, monkeypatch):
        suite = VerificationSuite()
        monkeypatch.setattr(VerificationSuite, 'steps', lambda self: [('bn', self.run_bn_structure)])
        assert suite.run()
        kv = suite.render(KV)
        assert kv.splitlines()[0] == 'suite.seed = 0'
        assert 'started' not in kv
        assert all(' = ' in line for line in kv.splitlines())
        text = suite.render(TEXT)
        assert text.startswith('weylgraphs verification report')
        assert f"started {suite.started}" in text
        assert f"{len(suite.checks)}/{len(suite.checks)} checks passed" in text

    def test_kv_is_identical_across_runs(self, monkeypatch):
        monkeypatch.setattr(VerificationSuite, 'steps',
                            lambda self: [('bn', self.run_bn_structure),
                                          ('relabel', self.run_relabeling)])
        first = VerificationSuite(seed=3, relabel_rounds=4)
        second = VerificationSuite(seed=3, relabel_rounds=4)
        assert first.run() and second.run()
        assert first.render(KV) == second.render(KV)

    @pytest.mark.slow
    def test_quick_suite_passes(self):
        suite = VerificationSuite(include_slow=False, relabel_rounds=5)
        assert suite.run(), [f"{s}.{n}" for s, n, ok in suite.checks if not ok]
        values = entries(suite)
        assert values['summary.status'] == 'PASS'
        assert 'iso.E8~N+8(2)' not in values
        assert 'family.C4xC4xC4.vertices' in values
        assert values['family.builds.within_time_limit'] == 'true'
        assert 'C4xC4xC4' in suite.f4_instances


class TestTimeLimits:
    def test_within_limit(self):
        suite = VerificationSuite()
        suite.check_time('iso', 'E8', 12.5)
        assert suite.passed
        assert entries(suite) == {'iso.E8.within_time_limit': 'true'}
        assert suite.timings == [('iso.E8', 12.5)]

    def test_over_limit_fails(self):
        suite = VerificationSuite()
        suite.check_time('family', 'builds', TIME_LIMIT_SECONDS + 1)
        assert not suite.passed
        assert entries(suite)['family.builds.within_time_limit'] == 'false'

    def test_custom_limit(self):
        suite = VerificationSuite()
        suite.check_time('iso', 'E8', 2.0, limit=1.0)
        assert not suite.passed

    def test_timings_only_in_text(self):
        suite = VerificationSuite()
        suite.check_time('iso', 'E8', 4.5)
        assert '4.5' not in suite.render(KV)
        text = suite.render(TEXT)
        assert 'iso.E8' in text and '4.5' in text
