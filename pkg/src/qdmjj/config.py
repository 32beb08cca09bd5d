"""Run configuration: flat ``section.key = value`` files and shipped presets.

Example::

    mode = cv_sweep
    couplings.kappa = 0.95
    lead_left.delta = 2.5
    series = 0/0, 2.5/3.5, 3/6     # (delta_L/delta_R) pairs, one output each

Blank lines and ``#`` comments are ignored.
"""

import dataclasses
from dataclasses import dataclass, field
from importlib import resources

from .leads import DEFAULT_TEMPERATURE, CouplingSet, LeadParams, bias_potentials, default_dynes
from .system import DEFAULT_T_HOP, InvalidParams, SystemParams

__all__ = [
    "ConfigError",
    "MODES",
    "RunConfig",
    "parse_config",
    "load_config",
    "preset_names",
    "load_preset",
]

MODES = ("iv_sweep", "cv_sweep", "dynamics", "resonance_dynamics")
INITIAL_KINDS = ("bell", "separable", "auto")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending line or field."""


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _series(text):
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split("/")
        if len(parts) != 2:
            raise ValueError(f"series entries look like 'delta_l/delta_r', got {item!r}")
        pairs.append((float(parts[0]), float(parts[1])))
    if not pairs:
        raise ValueError("empty series")
    return tuple(pairs)


# key -> converter; every accepted key is listed here
KEYS = {
    "mode": str,
    "initial": str,
    "output": str,
    "mu0": float,
    "series": _series,
    "sys.eps_a": float,
    "sys.eps_b": float,
    "sys.t_hop": float,
    "couplings.gamma0": float,
    "couplings.kappa": float,
    "v_grid.v_min": float,
    "v_grid.v_max": float,
    "v_grid.n_points": int,
    "v_grid.refine_near_resonances": _bool,
    "bias.v": float,
    "bias.high": float,
    "t_grid.t_max": float,
    "t_grid.n_points": int,
    "solver.include_coherent": _bool,
    "solver.cross_terms": _bool,
}
for _lead in ("lead_left", "lead_right"):
    for _name in ("delta", "phase", "temperature", "dynes"):
        KEYS[f"{_lead}.{_name}"] = float


@dataclass
class LeadSettings:
    """Lead parameters before the bias shift; ``dynes=None`` means default."""

    delta: float = 0.0
    phase: float = 0.0
    temperature: float = DEFAULT_TEMPERATURE
    dynes: float = None

    def resolve(self, mu, gamma0):
        dynes = self.dynes if self.dynes is not None else default_dynes(self.delta, gamma0)
        return LeadParams(self.delta, self.phase, mu, self.temperature, dynes)


@dataclass
class RunConfig:
    mode: str = "iv_sweep"
    eps_a: float = 4.0
    eps_b: float = 2.0
    t_hop: float = DEFAULT_T_HOP
    lead_left: LeadSettings = field(default_factory=LeadSettings)
    lead_right: LeadSettings = field(default_factory=LeadSettings)
    gamma0: float = 1.0
    kappa: float = 0.0
    mu0: float = 0.0
    initial: str = "auto"
    v_min: float = 0.0
    v_max: float = 12.0
    n_points: int = 241
    refine_near_resonances: bool = True
    bias: float = 7.1
    high_bias: float = None
    t_max: float = 50.0
    t_points: int = 400
    include_coherent: bool = True
    cross_terms: bool = False
    series: tuple = None
    output: str = None
    name: str = "run"

    @property
    def system(self):
        return SystemParams(self.eps_a, self.eps_b, self.t_hop)

    @property
    def couplings(self):
        return CouplingSet(self.gamma0, self.kappa)

    def resolved_initial(self):
        """``auto`` means Bell for symmetric coupling, ``|gg>`` otherwise."""
        if self.initial != "auto":
            return self.initial
        return "bell" if self.kappa == 0 else "separable"

    def gap_pairs(self):
        if self.series:
            return list(self.series)
        return [(self.lead_left.delta, self.lead_right.delta)]

    def for_gaps(self, delta_l, delta_r):
        """Copy with the given lead gaps (and no series)."""
        return dataclasses.replace(
            self,
            lead_left=dataclasses.replace(self.lead_left, delta=delta_l),
            lead_right=dataclasses.replace(self.lead_right, delta=delta_r),
            series=None,
        )

    def leads(self, v):
        """Left and right :class:`LeadParams` at bias ``v``."""
        mu_l, mu_r = bias_potentials(self.mu0, v)
        return (self.lead_left.resolve(mu_l, self.gamma0),
                self.lead_right.resolve(mu_r, self.gamma0))

    def validate(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode: expected one of {', '.join(MODES)}, got {self.mode!r}")
        if self.initial not in INITIAL_KINDS:
            raise ConfigError(f"initial: expected one of {', '.join(INITIAL_KINDS)}, got {self.initial!r}")
        if not self.v_min < self.v_max:
            raise ConfigError(f"v_grid: v_min ({self.v_min}) must be below v_max ({self.v_max})")
        if self.n_points < 2:
            raise ConfigError(f"v_grid.n_points: need at least 2, got {self.n_points}")
        if self.t_max <= 0 or self.t_points < 2:
            raise ConfigError("t_grid: need t_max > 0 and n_points >= 2")
        try:
            self.system.validate()
            self.couplings
            for dl, dr in self.gap_pairs():
                self.for_gaps(dl, dr).leads(0.0)
        except (InvalidParams, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        return self

    def manifest_items(self):
        """Every resolved setting as ``(key, value)`` pairs."""
        items = [
            ("mode", self.mode),
            ("name", self.name),
            ("sys.eps_a", self.eps_a),
            ("sys.eps_b", self.eps_b),
            ("sys.t_hop", self.t_hop),
            ("couplings.gamma0", self.gamma0),
            ("couplings.kappa", self.kappa),
            ("mu0", self.mu0),
        ]
        for name, lead in (("lead_left", self.lead_left), ("lead_right", self.lead_right)):
            items += [
                (f"{name}.delta", lead.delta),
                (f"{name}.phase", lead.phase),
                (f"{name}.temperature", lead.temperature),
                (f"{name}.dynes", lead.dynes if lead.dynes is not None
                 else default_dynes(lead.delta, self.gamma0)),
            ]
        items += [
            ("initial", self.resolved_initial()),
            ("v_grid.v_min", self.v_min),
            ("v_grid.v_max", self.v_max),
            ("v_grid.n_points", self.n_points),
            ("v_grid.refine_near_resonances", self.refine_near_resonances),
            ("bias.v", self.bias),
            ("bias.high", self.high_bias if self.high_bias is not None else self.v_max),
            ("t_grid.t_max", self.t_max),
            ("t_grid.n_points", self.t_points),
            ("solver.include_coherent", self.include_coherent),
            ("solver.cross_terms", self.cross_terms),
        ]
        return items


_FIELD_OF_KEY = {
    "mode": "mode", "initial": "initial", "output": "output", "mu0": "mu0", "series": "series",
    "sys.eps_a": "eps_a", "sys.eps_b": "eps_b", "sys.t_hop": "t_hop",
    "couplings.gamma0": "gamma0", "couplings.kappa": "kappa",
    "v_grid.v_min": "v_min", "v_grid.v_max": "v_max", "v_grid.n_points": "n_points",
    "v_grid.refine_near_resonances": "refine_near_resonances",
    "bias.v": "bias", "bias.high": "high_bias",
    "t_grid.t_max": "t_max", "t_grid.n_points": "t_points",
    "solver.include_coherent": "include_coherent", "solver.cross_terms": "cross_terms",
}


def apply_setting(cfg: RunConfig, key, value):
    """Set one already-converted ``key`` on ``cfg`` in place."""
    if key.startswith(("lead_left.", "lead_right.")):
        lead, attr = key.split(".", 1)
        setattr(getattr(cfg, lead), attr, value)
    else:
        setattr(cfg, _FIELD_OF_KEY[key], value)


def parse_config(text, source="<config>", base=None):
    """Parse config text on top of ``base`` (default settings if omitted)."""
    cfg = dataclasses.replace(base) if base is not None else RunConfig()
    cfg.lead_left = dataclasses.replace(cfg.lead_left)
    cfg.lead_right = dataclasses.replace(cfg.lead_right)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            converted = KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
        apply_setting(cfg, key, converted)
    return cfg


def load_config(path, base=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, str(path), base)


def preset_names():
    files = resources.files("qdmjj").joinpath("presets").iterdir()
    return sorted(f.name[:-4] for f in files if f.name.endswith(".cfg"))


def load_preset(name):
    """Figure-reproduction preset ``name`` (see :func:`preset_names`)."""
    ref = resources.files("qdmjj").joinpath("presets", f"{name}.cfg")
    if not ref.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    cfg = parse_config(ref.read_text(encoding="utf-8"), f"preset {name}")
    cfg.name = name
    return cfg
