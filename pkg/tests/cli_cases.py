"""CLI invocations whose output is pinned under tests/golden/.

Regenerate with ``python3 tests/cli_cases.py`` after an intended change.
"""

import contextlib
import io
from pathlib import Path

from iarefine import corpus
from iarefine.cli import main

GOLDEN = Path(__file__).parent / "golden"
CORPUS = Path(corpus.__file__).parent

PAIRS = [("s_B", "s_A"), ("s_C", "s_A"), ("s_D", "s_A"), ("s_E", "s_F"),
         ("s_G", "s_H"), ("s_I", "s_J"), ("s_M", "s_N"), ("s_P", "s_Q")]
RELATIONS = ["if", "iuoe", "equiv-if", "uioco", "ioco", "as", "atc", "tb", "all"]


def _ia(name):
    return str(CORPUS / f"{name}.ia")


def cases():
    """(golden file stem, argv) for every pinned invocation."""
    out = []
    for left, right in PAIRS:
        for rel in RELATIONS:
            for fmt in ("text", "json"):
                argv = ["check", rel, _ia(left), _ia(right)]
                if fmt == "json":
                    argv.append("--json")
                out.append((f"check-{rel}-{left}-{right}.{fmt}", argv))
    out.append(("check-atc-s_G-s_H-depth4.text", ["check", "atc", _ia("s_G"), _ia("s_H"), "--depth", "4"]))
    out.append(("check-uioco-s_E-s_F-verify.text", ["check", "uioco", _ia("s_E"), _ia("s_F"), "--verify"]))
    for kind in ("delta", "det", "detiu"):
        for name in ("s_A", "s_E", "s_P"):
            out.append((f"transform-{kind}-{name}.ia", ["transform", kind, _ia(name)]))
            out.append((f"transform-{kind}-{name}.dot", ["transform", kind, _ia(name), "--dot"]))
    for name in corpus.NAMES:
        out.append((f"traces-{name}.text", ["traces", _ia(name), "--depth", "3"]))
        out.append((f"ftraces-{name}.text", ["traces", _ia(name), "--depth", "3", "--failures"]))
        out.append((f"info-{name}.text", ["info", _ia(name)]))
    for left, right in PAIRS[:4]:
        for rel in ("if", "iuoe", "uioco"):
            out.append((f"oracle-{rel}-{left}-{right}.text", ["oracle", rel, _ia(left), _ia(right)]))
    return out


def run(argv):
    """Run the CLI in-process; return the pinned transcript."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        code = main(argv)
    err = stderr.getvalue().replace(str(CORPUS), "<corpus>")
    return f"exit: {code}\n--- stdout\n{stdout.getvalue()}--- stderr\n{err}"


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for old in GOLDEN.glob("*"):
        old.unlink()
    for stem, argv in cases():
        (GOLDEN / stem).write_text(run(argv), encoding="utf-8")
    print(f"wrote {len(cases())} golden files")
