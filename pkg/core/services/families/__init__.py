# 矩阵族实现
