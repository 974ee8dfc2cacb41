"""Small shared output helpers: atomic writes, hashing, number formatting."""

import hashlib
import os
import tempfile


def fmt(x):
    """Shortest decimal that round-trips the float (repr semantics)."""
    return repr(float(x))


def atomic_write_text(path, text):
    """Write text to path via a temp file + rename (never a torn file)."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
