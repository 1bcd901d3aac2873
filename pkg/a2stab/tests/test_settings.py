"""
Unit tests for library settings.
"""

from unittest.mock import patch

import pytest
from pydantic import ValidationError

from a2stab.utils.settings import Settings


class TestSettingsDefaults:
    """Test default settings (env file bypassed to test coded defaults)."""

    def test_default_quadrature(self):
        """Test default quadrature knobs."""
        settings = Settings(_env_file=None)
        assert settings.quad_nodes == 32
        assert settings.target_tol == 1e-12
        assert settings.max_doublings == 5
        assert settings.truncation_radius == 6.0

    def test_default_fd_steps(self):
        """Test default finite-difference steps."""
        settings = Settings(_env_file=None)
        assert settings.fd_step == 1e-2
        assert settings.exp_fd_step == 1e-2

    def test_default_region_tol(self):
        settings = Settings(_env_file=None)
        assert settings.region_tol == 1e-9

    def test_default_path_samples(self):
        assert Settings(_env_file=None).path_samples == 24

    def test_default_max_word_length(self):
        assert Settings(_env_file=None).max_word_length == 100_000

    def test_default_caps(self):
        """Test default exploration caps."""
        settings = Settings(_env_file=None)
        assert settings.radius_cap == 10
        assert settings.reduction_cap == 1000
        assert settings.bfs_depth == 24

    def test_default_cache_max_size(self):
        settings = Settings(_env_file=None)
        assert settings.cache_max_size == 256

    def test_default_log_level(self):
        settings = Settings(_env_file=None)
        assert settings.log_level == "INFO"


class TestSettingsEnvironmentVariables:
    """Test settings loading from environment variables."""

    def test_quad_nodes_from_env(self):
        with patch.dict("os.environ", {"A2STAB_QUAD_NODES": "64"}):
            assert Settings(_env_file=None).quad_nodes == 64

    def test_target_tol_from_env(self):
        with patch.dict("os.environ", {"A2STAB_TARGET_TOL": "1e-10"}):
            assert Settings(_env_file=None).target_tol == 1e-10

    def test_prefix_is_case_insensitive(self):
        with patch.dict("os.environ", {"a2stab_radius_cap": "4"}):
            assert Settings(_env_file=None).radius_cap == 4

    def test_unprefixed_variable_ignored(self):
        with patch.dict("os.environ", {"QUAD_NODES": "64"}):
            assert Settings(_env_file=None).quad_nodes == 32

    def test_log_level_from_env(self):
        with patch.dict("os.environ", {"A2STAB_LOG_LEVEL": "DEBUG"}):
            assert Settings(_env_file=None).log_level == "DEBUG"


class TestSettingsValidation:
    """Test settings validation."""

    def test_valid_settings(self):
        settings = Settings(_env_file=None, quad_nodes=16, fd_step=5e-3, bfs_depth=8)
        assert settings.quad_nodes == 16
        assert settings.fd_step == 5e-3
        assert settings.bfs_depth == 8

    def test_non_numeric_rejected(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, quad_nodes="many")
