import pytest

from mpkcheck.config.environment import get_env_var, get_env_var_bool, get_env_var_float, get_env_var_list
from mpkcheck.config.settings import AppSettings, LoggingSettings
from mpkcheck.config.suite_file import SuiteFileLoader, build_config
from mpkcheck.schemas.models import SuiteConfig
from mpkcheck.utils.error import ConfigError, ErrorCode

SUITE_YAML = """
suite:
  n_max: 2
  k_max: 1
  trunc_N: 12
  tol: 1.0e-9
  checks: ekk, proj_E
"""


@pytest.fixture
def suite_file(tmp_path):
    path = tmp_path / "configs" / "suite.yaml"
    path.parent.mkdir()
    path.write_text(SUITE_YAML, encoding="utf-8")
    return path


def _loader(path=None, strict=None):
    return SuiteFileLoader(path, strict=strict, app_settings=AppSettings.from_environment())


class TestSuiteFile:
    def test_defaults_without_file(self):
        config = _loader().load()
        assert config == SuiteConfig()
        assert config.ledger_bound == 10

    def test_section_and_aliases(self, suite_file):
        config = _loader().load()
        assert config.n_max == 2
        assert config.truncation_N == 12
        assert config.tolerance == 1e-9
        assert config.checks == ["ekk", "proj_E"]

    def test_bare_keys(self, tmp_path):
        path = tmp_path / "bare.yaml"
        path.write_text("n_max: 4\nseed: 9\n", encoding="utf-8")
        config = _loader(str(path)).load()
        assert (config.n_max, config.seed) == (4, 9)

    def test_environment_beats_file(self, suite_file, monkeypatch):
        monkeypatch.setenv("MPK_N_MAX", "5")
        monkeypatch.setenv("MPK_TRUNC_N", "20")
        config = _loader().load()
        assert config.n_max == 5
        assert config.truncation_N == 20
        assert config.k_max == 1

    def test_overrides_beat_environment(self, suite_file, monkeypatch):
        monkeypatch.setenv("MPK_N_MAX", "5")
        config = _loader().load({"n_max": 7, "seed": None})
        assert config.n_max == 7
        assert config.seed == 42

    def test_malformed_environment_value_is_ignored(self, suite_file, monkeypatch):
        monkeypatch.setenv("MPK_N_MAX", "many")
        assert _loader().load().n_max == 2

    def test_environment_lists(self, monkeypatch):
        monkeypatch.setenv("MPK_EXPECT_FAIL", "fault_sink_handling, fault_noninjective")
        monkeypatch.setenv("MPK_INCLUDE_FAULTS", "yes")
        config = _loader().load()
        assert config.expect_fail == ["fault_sink_handling", "fault_noninjective"]
        assert config.include_faults is True

    def test_missing_file_in_strict_mode(self):
        with pytest.raises(ConfigError) as info:
            _loader("nowhere.yaml", strict=True).load()
        assert info.value.code == ErrorCode.SUITE_FILE_INVALID

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("suite: [1, 2\n", encoding="utf-8")
        assert _loader(str(path)).load() == SuiteConfig()
        with pytest.raises(ConfigError):
            _loader(str(path), strict=True).load()

    def test_non_mapping_section(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("suite:\n  - n_max\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            _loader(str(path), strict=True).load()

    def test_strict_from_environment(self, monkeypatch):
        monkeypatch.setenv("MPK_STRICT_SUITE_FILE", "1")
        monkeypatch.setenv("MPK_SUITE_FILE", "missing.yaml")
        with pytest.raises(ConfigError):
            _loader().load()


class TestValidation:
    @pytest.mark.parametrize("values,field", [
        ({"n_max": 0}, "n_max"),
        ({"tolerance": -1.0}, "tolerance"),
        ({"bogus": 1}, "bogus"),
    ])
    def test_rejected_values(self, values, field):
        with pytest.raises(ConfigError) as info:
            build_config(values)
        assert any(problem.startswith(field) for problem in info.value.details["errors"])

    def test_window_must_fit(self):
        with pytest.raises(ConfigError):
            build_config({"truncation_N": 4, "margin": 2})

    def test_alias_accepted_by_model(self):
        assert build_config({"trunc_N": 10}).truncation_N == 10

    @pytest.mark.parametrize("value,expected", [
        ("all", "all"),
        ("", "all"),
        (["all"], "all"),
        ("ekk,proj_E", ["ekk", "proj_E"]),
        (["ekk"], ["ekk"]),
    ])
    def test_check_selection(self, value, expected):
        assert SuiteConfig(checks=value).checks == expected

    def test_ledger_bound_follows_n_max(self):
        assert SuiteConfig(n_max=12, ledger_n_max=3).ledger_bound == 12


class TestEnvironment:
    def test_conversions(self, monkeypatch):
        monkeypatch.setenv("MPK_TOL", "1e-8")
        monkeypatch.setenv("MPK_INCLUDE_FAULTS", "off")
        assert get_env_var("MPK_TOL", 0.1) == 1e-8
        assert get_env_var_bool("MPK_INCLUDE_FAULTS", True) is False
        assert get_env_var("MPK_UNSET", 3) == 3

    def test_typed_helpers(self, monkeypatch):
        monkeypatch.setenv("MPK_CHECKS", "ekk, ,proj_E")
        monkeypatch.setenv("MPK_TOL", "tiny")
        assert get_env_var_list("MPK_CHECKS") == ["ekk", "proj_E"]
        assert get_env_var_list("MPK_EXPECT_FAIL") == []
        assert get_env_var_float("MPK_TOL", 1e-10) == 1e-10

    def test_unknown_log_level(self, monkeypatch):
        monkeypatch.setenv("MPK_LOG_LEVEL", "chatty")
        assert LoggingSettings.from_environment().level == "WARNING"
        monkeypatch.setenv("MPK_LOG_LEVEL", "debug")
        assert LoggingSettings.from_environment().level == "DEBUG"
