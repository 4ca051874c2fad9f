import math
from typing import Tuple, Union

import numpy as np


def cell_index(x: Union[int, np.ndarray], a_l: int) -> Union[int, np.ndarray]:
    """
    The y with x in I_y = y * a_l + (-a_l / 2, a_l / 2], for an int or an integer array.
    """
    return -((a_l - 2 * x) // (2 * a_l))


def block_cells(a_l: int, y: int, multiplier: float) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """
    Integer ranges (inclusive) of the cell I_y and of the enlarged block
    y * a_l + (-R a_l, R a_l).
    """
    cell = (y * a_l + (-a_l) // 2 + 1, y * a_l + a_l // 2)
    return cell, enlarged_block(a_l, y, multiplier)


def enlarged_block(a_l: int, y: int, multiplier: float) -> Tuple[int, int]:
    reach = multiplier * a_l
    center = y * a_l
    return int(math.floor(center - reach)) + 1, int(math.ceil(center + reach)) - 1
