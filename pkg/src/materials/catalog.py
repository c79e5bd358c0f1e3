import logging

from pydantic import ValidationError

from src.materials.dielectric import Constant, DielectricModel, DrudeLorentz, Plasma, Vacuum
from src.utils import config
from src.utils.exceptions import DomainError

logger = logging.getLogger(__name__)

MATERIAL_PRESETS: dict[str, DielectricModel] = {
    "gold": Plasma(omega_p=config.GOLD_PLASMA_FREQUENCY),
    "silicon": DrudeLorentz(
        omega_p=config.SILICON_PLASMA_FREQUENCY,
        omega_0=config.SILICON_RESONANCE_FREQUENCY,
    ),
    "air": Vacuum(),
}

CONSTANT_PREFIX = "const:"


def normalize_material_name(name: str) -> str:
    key = name.strip().lower()
    if key.startswith(CONSTANT_PREFIX):
        return CONSTANT_PREFIX + key[len(CONSTANT_PREFIX):].strip()
    return config.MATERIAL_ALIASES.get(key, key)


def material_from_name(name: str) -> DielectricModel:
    """
    Resolve a CLI material name to its dielectric model.

    Args:
        name: "gold", "silicon", "air" (or an alias) or "const:<epsilon>"

    Returns:
        The matching DielectricModel
    """
    key = normalize_material_name(name)
    if key in MATERIAL_PRESETS:
        return MATERIAL_PRESETS[key]

    if key.startswith(CONSTANT_PREFIX):
        raw = key[len(CONSTANT_PREFIX):]
        try:
            return Constant(epsilon=float(raw))
        except (ValueError, ValidationError) as e:
            raise DomainError(f"invalid constant permittivity '{raw}': {e}") from e

    known = ", ".join([*MATERIAL_PRESETS, f"{CONSTANT_PREFIX}<value>"])
    raise DomainError(f"unknown material '{name}' (known: {known})")
