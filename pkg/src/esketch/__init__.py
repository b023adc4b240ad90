"""Verification toolkit for enhanced limit 2-sketches."""
from .closure import (MultiModel, TensorSketch, check_multimodel, classify_morphism, curry,
                      multimodel_of, symmetry_transpose, tensor_model, tensor_sketches, uncurry)
from .dsl import parse, parse_sketch, print_sketch
from .enhanced import FCatPresentation, Path, Weakness
from .errors import EsketchError
from .models import (ModTarget, Model, Modification, WTransform, check_model,
                     check_modification, check_transformation, enumerate_transformations,
                     pointwise_limit)
from .power import is_power_theory, strictify
from .report import VerificationReport
from .sketches import (FSketch, TwoSketch, builtin, chordate_sketch, free_enhance,
                       underlying_2sketch, validate_sketch)
from .targets import ChordFinCat

__all__ = [
    "MultiModel", "TensorSketch", "check_multimodel", "classify_morphism", "curry",
    "multimodel_of", "symmetry_transpose", "tensor_model", "tensor_sketches", "uncurry",
    "parse", "parse_sketch", "print_sketch", "FCatPresentation", "Path", "Weakness",
    "EsketchError", "ModTarget", "Model", "Modification", "WTransform", "check_model",
    "check_modification", "check_transformation", "enumerate_transformations",
    "pointwise_limit", "is_power_theory", "strictify", "VerificationReport", "FSketch",
    "TwoSketch", "builtin", "chordate_sketch", "free_enhance", "underlying_2sketch",
    "validate_sketch", "ChordFinCat",
]
