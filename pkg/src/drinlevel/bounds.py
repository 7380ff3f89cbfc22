"""Process-wide size guards; every bound can also be passed per call."""

from dataclasses import dataclass


class BoundExceeded(RuntimeError):
    pass


@dataclass
class Bounds:
    max_card: int = 2 ** 16       # largest ring or candidate set we enumerate
    x_degree_cap: int = 2 ** 20   # largest X-degree q^n of a twisted product
    char_degree: int = 4          # characteristic search: deg pi <= this
    split_degree: int = 16        # splitting search: [l' : F_q] <= this


DEFAULT = Bounds()


def check_card(n: int, what: str, max_card: int | None = None) -> None:
    limit = DEFAULT.max_card if max_card is None else max_card
    if n > limit:
        raise BoundExceeded(f"{what}: size {n} exceeds enumeration bound {limit}")
