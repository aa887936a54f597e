"""Plain-text model files: one ``section.key = value`` per line.

Floats are written with ``repr`` (shortest round-trip decimal), keys in a
fixed order, so ``dumps(loads(text)) == text`` for any file this module
wrote.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .jumps import ExponentialJump, NoJumps, TemperedStable
from .mixing import DiscreteMixing, GammaMixing
from .process import SupJcirModel

__all__ = ["ModelFile", "dumps", "loads", "read", "write", "ModelFileError"]

HEADER = "# supjcir model file"


class ModelFileError(ValueError):
    """Malformed model file (syntax, missing key, bad number)."""


@dataclass
class ModelFile:
    model: SupJcirModel
    provenance: dict = field(default_factory=dict)


def _f(x):
    return repr(float(x))


def _floats(xs):
    return ", ".join(_f(x) for x in xs)


def dumps(doc) -> str:
    if isinstance(doc, SupJcirModel):
        doc = ModelFile(doc)
    m = doc.model
    lines = [HEADER, f"model.a = {_f(m.a)}", f"model.sigma = {_f(m.sigma)}"]
    j = m.jumps
    if isinstance(j, NoJumps):
        lines.append("jump.variant = none")
    elif isinstance(j, ExponentialJump):
        lines += ["jump.variant = exponential", f"jump.mu = {_f(j.mu)}", f"jump.beta = {_f(j.beta)}"]
    elif isinstance(j, TemperedStable):
        lines += ["jump.variant = tempered", f"jump.gamma = {_f(j.gamma)}",
                  f"jump.beta = {_f(j.beta)}", f"jump.alpha = {_f(j.alpha)}"]
    else:
        raise TypeError(f"cannot serialize jump measure {type(j).__name__}")
    mix = m.mixing
    if isinstance(mix, GammaMixing):
        lines += ["mixing.variant = gamma", f"mixing.omega = {_f(mix.omega)}", f"mixing.theta = {_f(mix.theta)}"]
    else:
        lines += ["mixing.variant = discrete", f"mixing.weights = {_floats(mix.weights)}",
                  f"mixing.rates = {_floats(mix.rates)}"]
    for key in sorted(doc.provenance):
        val = doc.provenance[key]
        if isinstance(val, bool):
            text = "true" if val else "false"
        elif isinstance(val, float):
            text = _f(val)
        else:
            text = str(val)
        if "\n" in text:
            raise ValueError(f"provenance value for {key!r} spans lines")
        lines.append(f"fit.{key} = {text}")
    return "\n".join(lines) + "\n"


def _parse_lines(text):
    out = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep or "." not in key:
            raise ModelFileError(f"line {no}: expected 'section.key = value', got {raw!r}")
        if key in out:
            raise ModelFileError(f"line {no}: duplicate key {key!r}")
        out[key] = val
    return out


def _num(kv, key):
    if key not in kv:
        raise ModelFileError(f"missing key {key!r}")
    try:
        return float(kv[key])
    except ValueError:
        raise ModelFileError(f"key {key!r}: not a number: {kv[key]!r}") from None


def _nums(kv, key):
    if key not in kv:
        raise ModelFileError(f"missing key {key!r}")
    try:
        return tuple(float(x) for x in kv[key].split(","))
    except ValueError:
        raise ModelFileError(f"key {key!r}: not a number list: {kv[key]!r}") from None


def _scalar(text):
    if text in ("true", "false"):
        return text == "true"
    try:
        return float(text)
    except ValueError:
        return text


def loads(text: str) -> ModelFile:
    """Parse a model file; model invariant failures raise InvariantViolation."""
    kv = _parse_lines(text)
    a, sigma = _num(kv, "model.a"), _num(kv, "model.sigma")
    variant = kv.get("jump.variant", "none")
    if variant == "none":
        jumps = NoJumps()
    elif variant == "exponential":
        jumps = ExponentialJump(_num(kv, "jump.mu"), _num(kv, "jump.beta"))
    elif variant == "tempered":
        jumps = TemperedStable(_num(kv, "jump.gamma"), _num(kv, "jump.beta"), _num(kv, "jump.alpha"))
    else:
        raise ModelFileError(f"unknown jump.variant {variant!r}")
    mv = kv.get("mixing.variant")
    if mv == "gamma":
        mixing = GammaMixing(_num(kv, "mixing.omega"), _num(kv, "mixing.theta"))
    elif mv == "discrete":
        mixing = DiscreteMixing(_nums(kv, "mixing.weights"), _nums(kv, "mixing.rates"))
    else:
        raise ModelFileError(f"unknown or missing mixing.variant {mv!r}")
    model = SupJcirModel(a, sigma, jumps, mixing)
    prov = {k[4:]: _scalar(v) for k, v in kv.items() if k.startswith("fit.")}
    known = {"model.a", "model.sigma", "jump.variant", "jump.mu", "jump.beta", "jump.gamma", "jump.alpha",
             "mixing.variant", "mixing.omega", "mixing.theta", "mixing.weights", "mixing.rates"}
    extra = [k for k in kv if k not in known and not k.startswith("fit.")]
    if extra:
        raise ModelFileError(f"unknown keys: {', '.join(sorted(extra))}")
    return ModelFile(model, prov)


def read(path) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(path, doc):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(doc))

