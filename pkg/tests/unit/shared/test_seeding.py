"""
Unit tests for seeding utilities
"""
import numpy as np
import pytest

from src.shared.utils.seeding import derive_seed, make_rng, rng_identifier


@pytest.mark.unit
class TestMakeRng:
    """Test suite for make_rng"""

    def test_pcg64_stream(self):
        """Test the generator is PCG64 seeded directly"""
        rng = make_rng(42)
        assert isinstance(rng.bit_generator, np.random.PCG64)
        expected = np.random.Generator(np.random.PCG64(42)).random(5)
        np.testing.assert_array_equal(rng.random(5), expected)

    def test_negative_seed(self):
        """Test negative seeds are rejected"""
        with pytest.raises(ValueError):
            make_rng(-1)


@pytest.mark.unit
class TestDeriveSeed:
    """Test suite for derive_seed"""

    def test_stable(self):
        """Test the same labels give the same seed"""
        assert derive_seed(3, "A", "target") == derive_seed(3, "A", "target")

    def test_labels_separate_streams(self):
        """Test different base seeds, labels and label order give different seeds"""
        seeds = {
            derive_seed(3, "A", "target"),
            derive_seed(4, "A", "target"),
            derive_seed(3, "B", "target"),
            derive_seed(3, "A", "source"),
            derive_seed(3, "target", "A"),
            derive_seed(3, "A", 1),
        }
        assert len(seeds) == 6

    def test_range(self):
        """Test derived seeds are valid non-negative 63-bit seeds"""
        for base in range(20):
            seed = derive_seed(base, "meta", "A+B")
            assert 0 <= seed < 2 ** 63
            make_rng(seed)


@pytest.mark.unit
def test_rng_identifier():
    """Test the identifier names the bit generator and numpy version"""
    identifier = rng_identifier()
    assert identifier.startswith("numpy.random.PCG64/")
    assert np.__version__ in identifier
