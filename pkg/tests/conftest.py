import numpy as np
import pytest

from spoofkit.audio import AudioClip
from spoofkit.catalog import Catalog, CatalogEntry


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] {report.nodeid.split('::')[-1]}")


def make_entry(i, dataset="ASVspoof19LA", label="bonafide", language="und",
               system=None, duration=None):
    if system is None:
        system = "stub_tts" if label == "spoof" else "stub_source"
    return CatalogEntry(
        sample_id=f"{dataset}_{label}_{i:05d}",
        path=f"{dataset}/{label}_{i:05d}.wav",
        label=label,
        dataset=dataset,
        language=language,
        source_system=system,
        duration_s=duration,
    )


@pytest.fixture
def small_catalog():
    entries = [make_entry(i, label="bonafide") for i in range(20)]
    entries += [make_entry(i, label="spoof") for i in range(30)]
    return Catalog(entries)


@pytest.fixture
def tone_clip():
    t = np.arange(16000) / 16000.0
    return AudioClip(16000, 0.5 * np.sin(2 * np.pi * 300 * t))
