"""可复现的随机数源。

底层算法固定为 numpy 的 PCG64：相同种子在同一构建下产生完全相同的抽样序列。
子流通过 SeedSequence([seed, stream]) 重新播种派生，互不相关。"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from minigate.common import ArgumentError

_MAX_SEED = 2**64


@dataclass
class RngState:
    """带种子的随机数状态，抽样会推进内部状态。"""

    seed: int
    _generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) < _MAX_SEED:
            raise ArgumentError(f"种子必须是 64 位无符号整数，当前为 {self.seed}")
        self.seed = int(self.seed)
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def spawn(self, stream: int) -> RngState:
        """派生独立子流，不推进当前状态。"""

        sequence = np.random.SeedSequence([self.seed, int(stream)])
        child_seed = int(sequence.generate_state(1, dtype=np.uint64)[0])
        return RngState(child_seed)

    def integers(self, low: int, high: int, size: int | tuple[int, ...]) -> npt.NDArray[np.int64]:
        """[low, high) 上的均匀整数。"""

        if low >= high:
            raise ArgumentError(f"整数区间为空：[{low}, {high})")
        return self._generator.integers(low, high, size=size, dtype=np.int64)

    def normal(self, scale: float, size: tuple[int, ...]) -> npt.NDArray[np.float64]:
        return self._generator.normal(0.0, scale, size=size)

    def random(self, size: tuple[int, ...]) -> npt.NDArray[np.float64]:
        """[0, 1) 上的连续均匀抽样。"""

        return self._generator.random(size)


__all__ = ["RngState"]
