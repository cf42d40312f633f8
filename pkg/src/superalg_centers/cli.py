"""Command line entry point: superalg-centers run | dump | list-suites."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .field import FieldError
from .superalg import SuperalgError, build
from .suites import ORDER, RUNNERS, SUITES, Context

SCHEMA = 1
FAMILIES = ("gl", "sl", "osp1")
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    family: str = "osp1"
    m: int = 0
    n: int = 0
    n2: int = 0
    p: int = 3
    e: int | None = None
    chi: str = "random-regular"
    seed: int = 0
    strong: bool = False
    suites: list = field(default_factory=lambda: list(ORDER))
    degree_bound: int = 2
    samples: int = 500
    out: str | None = None
    format: str = "json"
    timings: bool = False

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        cfg = cls()
        ints = {"m", "n", "n2", "p", "e", "seed", "degree_bound", "samples"}
        for key, raw in data.items():
            key = key.replace("-", "_")
            if raw is None:
                continue
            if key not in cfg.__dataclass_fields__:
                raise ConfigError(f"unknown config key {key!r}")
            if key in ints:
                try:
                    value = int(raw)
                except (TypeError, ValueError):
                    raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
            elif key in ("strong", "timings"):
                value = raw if isinstance(raw, bool) else str(raw).lower() in ("1", "true", "yes")
            elif key == "suites":
                value = parse_suites(raw)
            else:
                value = str(raw)
            setattr(cfg, key, value)
        cfg.validate()
        return cfg

    def validate(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.format not in ("json", "text"):
            raise ConfigError("format must be json or text")
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}")
        if self.samples < 0 or self.degree_bound < 0:
            raise ConfigError("samples and degree_bound must be non-negative")

    def resolved_e(self) -> int:
        """Coordinates of chi live in GF(p); Artin-Schreier roots need GF(p^p)."""
        if self.e is not None:
            return self.e
        return 1 if self.chi == "zero" else self.p

    def echo(self) -> dict:
        d = asdict(self)
        d["e"] = self.resolved_e()
        d.pop("out")
        d.pop("format")
        d.pop("timings")
        return d


def parse_suites(raw) -> list:
    if isinstance(raw, (list, tuple)):
        names = list(raw)
    else:
        names = [s.strip() for s in str(raw).split(",") if s.strip()]
    if names == ["all"]:
        return list(ORDER)
    for s in names:
        if s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}")
    return [s for s in ORDER if s in names]


def read_config_file(path: str) -> dict:
    """Flat key=value lines; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def make_algebra(cfg: RunConfig):
    try:
        return build(cfg.family, cfg.m, cfg.n, cfg.n2, cfg.p, cfg.resolved_e())
    except (SuperalgError, FieldError) as exc:
        raise ConfigError(str(exc)) from None


def sample_regular(g, rng: random.Random, strong: bool = False, exclude=(), tries: int = 1000):
    """Seeded rejection sampling of a regular semisimple chi with GF(p) coordinates."""
    for _ in range(tries):
        chi = g.pchar([rng.randrange(g.p) for _ in range(g.r)])
        if chi in exclude:
            continue
        if g.is_regular_semisimple(chi) and (not strong or g.is_strongly_regular(chi)):
            return chi
    raise ConfigError(f"no regular p-character found for {g.name} after {tries} draws")


def resolve_chi(g, cfg: RunConfig):
    """The configured chi, plus a second regular chi for the annihilator suite."""
    rng = random.Random(cfg.seed)
    if cfg.chi == "zero":
        return g.pchar([0] * g.r), []
    if cfg.chi == "random-regular":
        chi = sample_regular(g, rng, cfg.strong)
    else:
        try:
            vals = [int(v) for v in cfg.chi.split(",")]
        except ValueError:
            raise ConfigError(f"chi must be zero, random-regular or a comma list, got {cfg.chi!r}") from None
        if len(vals) != g.r:
            raise ConfigError(f"chi needs {g.r} toral coordinates")
        chi = g.pchar(vals)
    extra = []
    if "annihilator" in cfg.suites and g.is_regular_semisimple(chi):
        try:
            extra.append(sample_regular(g, rng, cfg.strong, exclude=(chi,)))
        except ConfigError:
            pass
    return chi, extra


def run(cfg: RunConfig) -> dict:
    g = make_algebra(cfg)
    chi, extra = resolve_chi(g, cfg)
    ctx = g.field
    if cfg.chi != "zero" and g.is_regular_semisimple(chi):
        try:
            g.enumerate_lambda(chi)
        except SuperalgError as exc:
            raise ConfigError(str(exc)) from None
    context = Context(g, chi, seed=cfg.seed, samples=cfg.samples,
                      degree_bound=cfg.degree_bound, extra_chis=extra)
    results = {}
    for name in cfg.suites:
        t0 = time.perf_counter()
        try:
            res = RUNNERS[name](context)
        except Exception as exc:  # annotate and keep going
            res = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
        if cfg.timings:
            res["seconds"] = round(time.perf_counter() - t0, 3)
        results[name] = res
    return {
        "schema": SCHEMA,
        "tool": {"name": "superalg-centers", "version": __version__},
        "config": cfg.echo(),
        "algebra": {
            "name": g.name,
            "s": g.s,
            "t": g.t,
            "r": g.r,
            "field": f"GF({ctx.p}^{ctx.e})",
            "modulus": list(ctx.modulus_poly),
            "rho": [ctx.render(v) for v in g.rho.values],
        },
        "chi": [ctx.render(v) for v in g.chi_toral(chi)],
        "regular": g.is_regular_semisimple(chi),
        "suites": results,
        "passed": all(r["passed"] for r in results.values()),
    }


def render_text(report: dict) -> str:
    lines = [f"{report['algebra']['name']} over {report['algebra']['field']}, chi = ({', '.join(report['chi'])})"]
    for name, res in report["suites"].items():
        status = "SKIP" if "skipped" in res else ("PASS" if res["passed"] else "FAIL")
        extras = ", ".join(f"{k}={v}" for k, v in sorted(res.items())
                           if k not in ("passed",) and not isinstance(v, (dict, list)) and len(str(v)) < 60)
        lines.append(f"{name:12s} {status}  {extras}")
    lines.append("overall " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _algebra_args(p):
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("-p", type=int, dest="p")
    p.add_argument("-e", type=int, dest="e")
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superalg-centers",
                                     description="Centers of reduced enveloping superalgebras in characteristic p")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run verification suites and write a report")
    _algebra_args(r)
    r.add_argument("--chi", help="zero, random-regular, or comma-separated toral coordinates")
    r.add_argument("--seed", type=int)
    r.add_argument("--strong", action="store_true", default=None, help="require trivial Weyl stabilizer")
    r.add_argument("--suites", help="comma-separated suite names or 'all'")
    r.add_argument("--degree-bound", type=int)
    r.add_argument("--samples", type=int, help="random triples for the associativity check")
    r.add_argument("--format", choices=("json", "text"))
    r.add_argument("--timings", action="store_true", default=None,
                   help="add wall-clock seconds per suite (reports are then not reproducible)")

    d = sub.add_parser("dump", help="print structure constants, roots, rho and form as JSON")
    _algebra_args(d)

    ls = sub.add_parser("list-suites", help="list the verification suites")
    ls.add_argument("--json", action="store_true")
    return parser


def _config_from_args(args) -> RunConfig:
    data = read_config_file(args.config) if args.config else {}
    for key in RunConfig.__dataclass_fields__:
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    return RunConfig.from_mapping(data)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS

    if args.command == "list-suites":
        if args.json:
            sys.stdout.write(to_json([{"name": k, "checks": SUITES[k]} for k in ORDER]))
        else:
            for k in ORDER:
                sys.stdout.write(f"{k:12s} {SUITES[k]}\n")
        return EXIT_PASS

    try:
        cfg = _config_from_args(args)
        if args.command == "dump":
            if cfg.e is None:
                cfg.e = 1
            g = make_algebra(cfg)
            _emit(to_json({"schema": SCHEMA, **g.dump()}), cfg.out)
            return EXIT_PASS
        report = run(cfg)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    text = to_json(report) if cfg.format == "json" else render_text(report)
    _emit(text, cfg.out)
    return EXIT_PASS if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
