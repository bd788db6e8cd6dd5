"""Nox sessions for idlkit."""

import platform
import sys
from pathlib import Path

import nox
from nox.sessions import Session

nox.options.default_venv_backend = "uv"
nox.options.reuse_existing_virtualenvs = True
nox.options.sessions = ["lint", "typing", "test"]

PYTHON = ["3.13"]
COVER_MIN = 80


def constraints(session: Session) -> Path:
    """Constraints file for the session's interpreter and platform."""
    filename = f"python{session.python}-{sys.platform}-{platform.machine()}.txt"
    return Path("constraints", filename)


def install_project(session: Session) -> None:
    """Install idlkit with its development extras, pinned when a constraints file exists."""
    pinned = constraints(session)
    if pinned.exists():
        session.install("-c", pinned.as_posix(), "-e", ".[dev]")
    else:
        session.install("-e", ".[dev]")


@nox.session(python=PYTHON, venv_backend="uv")
def lock(session: Session) -> None:
    """Lock dependencies."""
    filename = constraints(session)
    filename.parent.mkdir(exist_ok=True)
    session.run(
        "uv",
        "pip",
        "compile",
        "pyproject.toml",
        "--upgrade",
        "--quiet",
        "--all-extras",
        f"--output-file={filename}",
    )


@nox.session(python=PYTHON, tags=["lint"])
def lint(session: Session) -> None:
    """Run Ruff lint and format checks."""
    session.install("ruff")
    session.run("ruff", "check")
    session.run("ruff", "format", "--check")


@nox.session(python=PYTHON, tags=["format"])
def format_code(session: Session) -> None:
    """Format code with Ruff."""
    session.install("ruff")
    session.run("ruff", "format")


@nox.session(python=PYTHON, tags=["sort"])
def sort(session: Session) -> None:
    """Sort imports with Ruff."""
    session.install("ruff")
    session.run("ruff", "check", "--select", "I", "--fix")


@nox.session(python=PYTHON, tags=["typing"])
def typing(session: Session) -> None:
    """Run type checking with Pyright."""
    install_project(session)
    session.run("pyright")


@nox.session(python=PYTHON, tags=["test"])
def test(session: Session) -> None:
    """Run the fast test suite with coverage; the generated-spec sweep is left to ``sweep``."""
    install_project(session)
    session.run("pytest", "-m", "not slow", "--cov=idlkit", f"--cov-fail-under={COVER_MIN}", *session.posargs)


@nox.session(python=PYTHON, tags=["sweep"])
def sweep(session: Session) -> None:
    """Cross-check the analysis against brute force on the full set of generated specifications."""
    install_project(session)
    session.run("pytest", "-m", "slow", *session.posargs)


@nox.session(python=PYTHON, tags=["ci"])
def ci(session: Session) -> None:
    """Run all CI checks."""
    session.notify("lint")
    session.notify("typing")
    session.notify("test")
    session.notify("sweep")
