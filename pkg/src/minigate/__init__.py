"""minigate：带 chrono 门偏置初始化的 MGU 循环网络与合成基准实验。"""

__version__ = "0.1.0"
