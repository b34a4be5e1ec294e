"""Fragile watermarking: keyed LSB-nibble embedding with tamper localization."""

from ._fragmark import (
    LOGISTIC_R,
    ChaosState,
    FragmarkError,
    PositionRecord,
    VerifyReport,
    apply_attack,
    ber,
    chaos_seed,
    chaos_step,
    embed,
    extract,
    initialize_cover,
    map_unit_to_coord,
    prepare_tag,
    psnr,
    read_image,
    read_key,
    verify,
    write_image,
    write_key,
)

__all__ = [
    "LOGISTIC_R",
    "ChaosState",
    "FragmarkError",
    "PositionRecord",
    "VerifyReport",
    "apply_attack",
    "ber",
    "chaos_seed",
    "chaos_step",
    "embed",
    "extract",
    "initialize_cover",
    "map_unit_to_coord",
    "prepare_tag",
    "psnr",
    "read_image",
    "read_key",
    "verify",
    "write_image",
    "write_key",
]
