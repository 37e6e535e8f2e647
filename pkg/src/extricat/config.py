"""Session configuration shared by the CLI, scripts and tests."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from importlib import resources
from pathlib import Path

from . import linalg as la
from .reps import QuiverError, load_quiver_spec


class ConfigError(ValueError):
    pass


def fixture_path(name: str) -> Path:
    """Path of a bundled quiver spec, e.g. ``fixture_path("a3_left")``."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("extricat") / "fixtures" / name))


@dataclass(frozen=True)
class Caps:
    catalog: int = 256
    ext_enum: int = 2**12
    hom_enum: int = 2**12

    def __post_init__(self):
        for k, v in asdict(self).items():
            if not isinstance(v, int) or v <= 0:
                raise ConfigError("cap %r must be a positive integer, got %r" % (k, v))


@dataclass(frozen=True)
class SessionConfig:
    spec: str = ""
    p: int | None = None  # overrides the spec file's field when set
    backend: str = "module"
    window: tuple = (-3, 2)
    inner: tuple | None = None
    caps: Caps = field(default_factory=Caps)
    filt_bound: int | None = None
    star_bound: int = 3
    search_bound: int = 3
    fmt: str = "text"
    seed: int = 0
    samples: int = 120

    def __post_init__(self):
        if self.p is not None and (not isinstance(self.p, int) or not la.is_prime(self.p)):
            raise ConfigError("p must be prime, got %r" % (self.p,))
        if self.backend not in ("module", "derived"):
            raise ConfigError("backend must be 'module' or 'derived'")
        lo, hi = self.window
        if not lo < hi:
            raise ConfigError("window needs lo < hi, got %d:%d" % (lo, hi))
        if self.fmt not in ("json", "text"):
            raise ConfigError("format must be 'json' or 'text'")
        for name in ("star_bound", "search_bound", "samples"):
            if getattr(self, name) <= 0:
                raise ConfigError("%s must be positive" % name)
        if self.filt_bound is not None and self.filt_bound <= 0:
            raise ConfigError("filt_bound must be positive")

    def with_(self, **kw) -> "SessionConfig":
        return replace(self, **kw)

    def load(self):
        """Read the quiver spec; returns ``(quiver, p)``."""
        path = Path(self.spec)
        if not path.exists():
            path = fixture_path(self.spec) if self.spec else path
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError("cannot read quiver spec %r: %s" % (self.spec, exc.strerror)) from exc
        q, p = load_quiver_spec(text)
        return q, self.p if self.p is not None else p

    def category(self):
        """Build the catalog and the configured backend."""
        from .catalog import build_catalog
        from .derived import DerivedCategory
        from .modcat import ModuleCategory

        q, p = self.load()
        cat = build_catalog(q, p, cap=self.caps.catalog)
        if self.backend == "module":
            return ModuleCategory(cat, self.caps.ext_enum, self.caps.hom_enum)
        return DerivedCategory(cat, self.window, self.inner, self.caps.ext_enum, self.caps.hom_enum)


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError as exc:
        raise ConfigError("window must look like lo:hi, got %r" % text) from exc
    return lo, hi


__all__ = ["Caps", "ConfigError", "QuiverError", "SessionConfig", "fixture_path", "parse_window"]
