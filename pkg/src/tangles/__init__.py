"""Untangling and tangling of polynomial quotient algebras over prime fields."""

from .bitangle import (
    BivariateConfig,
    MaximalIdeal,
    basis_of_I,
    biv_tangle,
    biv_untangle,
    biv_untangle_layered,
    biv_untangle_shift,
    quot_inv,
    quot_mul,
)
from .errors import (
    CharacteristicTooSmall,
    DivisionByZero,
    DivisionByZeroPoly,
    InvalidStaircase,
    LengthMismatch,
    ModuliNotCoprime,
    NotAGenerator,
    NotInvertible,
    NotIrreducible,
    NotSeparable,
    PreconditionError,
    TanglesError,
)
from .field import ExtensionField, PrimeField, make_tower
from .powmod import pow_x_mod, pow_x_mod_power
from .staircase import Staircase, mono_inv, mono_mul
from .unitangle import (
    PowerModulus,
    dual_generator,
    dual_tproduct,
    hankel_solve,
    inv_mod_power,
    tangle,
    untangle,
    untangle_transposed,
)

__version__ = "0.1.0"
