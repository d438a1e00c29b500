import io
import json
import os
import sys

import pytest

from mph import cli, filtration, frames, presentation

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "mph", "data")


def data_path(name):
    return os.path.join(DATA, name)


def load_complex(name):
    return filtration.load(data_path(name + ".mfsc"))


def load_pres(name, field=None):
    return presentation.load(data_path(name + ".gpres"), field)


def pres_frame(name, field=None):
    return frames.frame_of_presentation(load_pres(name, field))


def run_cli(*argv):
    out = io.StringIO()
    code = cli.run([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run_cli(*argv, "--format", "json")
    assert code == 0, text
    return json.loads(text)


@pytest.fixture
def fig2():
    return load_complex("fig2")


def corpus(n=200, seed=2024, field=None):
    """Seeded random presentations, half with r = 2 and half with r = 3, degrees <= 4."""
    import random
    from mph.algebra import QQ
    rng = random.Random(seed)
    out = []
    for k in range(n):
        r = 2 + k % 2
        out.append(presentation.random_presentation(rng, r, max_deg=4 if r == 2 else 3, field=field or QQ))
    return out


def complex_corpus(n=100, seed=7):
    import random
    rng = random.Random(seed)
    return [filtration.random_complex(rng, 1, n_vertices=6, max_dim=2, max_entry=6) for _ in range(n)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
