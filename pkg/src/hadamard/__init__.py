from .product import (
    HadamardProduct,
    RayConstant,
    build_product,
    evaluate_product,
    evaluate_with_bound,
    fit_tail,
    ray_limit_constant,
    reconstructed_weyl,
)

__all__ = [
    "HadamardProduct",
    "RayConstant",
    "build_product",
    "evaluate_product",
    "evaluate_with_bound",
    "fit_tail",
    "ray_limit_constant",
    "reconstructed_weyl",
]
