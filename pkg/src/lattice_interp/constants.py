"""One entry point for every sharp constant K(theta) by (dim, order)."""

from . import green1d, green2d, greennd, higher_order

__all__ = ["ADMISSIBILITY_RULE", "InadmissibleError", "check_admissible", "sharp_constant"]

ADMISSIBILITY_RULE = (
    "theta in [1 - 1/(2n), 1] for dim = 1 and order n >= 1; "
    "theta in (0, 1] for dim = 2, order 1; "
    "theta in [0, 1] for dim = 3..5, order 1"
)


class InadmissibleError(ValueError):
    """(dim, order, theta) outside the range where the inequality holds."""


def check_admissible(dim, order, theta):
    dim, order, theta = int(dim), int(order), float(theta)
    if order < 1:
        raise InadmissibleError(f"order must be >= 1; rule: {ADMISSIBILITY_RULE}")
    if dim == 1:
        ok = 1.0 - 1.0 / (2.0 * order) <= theta <= 1.0
    elif dim == 2:
        ok = order == 1 and 0.0 < theta <= 1.0
    elif dim in greennd.SUPPORTED_DIMS:
        ok = order == 1 and 0.0 <= theta <= 1.0
    else:
        ok = False
    if not ok:
        raise InadmissibleError(
            f"(dim={dim}, order={order}, theta={theta}) is not admissible; rule: {ADMISSIBILITY_RULE}"
        )


def sharp_constant(dim, order, theta):
    """SharpConstantResult for u(0)^2 <= K ||u||^(2 theta) ||D^n u||^(2 (1 - theta))."""
    check_admissible(dim, order, theta)
    theta = float(theta)
    if dim == 1:
        if order == 1:
            return green1d.K1_theta(theta)
        if order == 2:
            return higher_order.K12_theta(theta)
        return higher_order.K1n_theta(order, theta)
    if dim == 2:
        return green2d.K2_theta(theta)
    return greennd.Kd_theta(dim, theta)
