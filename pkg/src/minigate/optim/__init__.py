"""参数更新：Adam、SGD 回退与全局范数裁剪。"""

from .adam import AdamState, adam_step, sgd_step
from .clipping import clip_global_norm

__all__ = ["AdamState", "adam_step", "sgd_step", "clip_global_norm"]
