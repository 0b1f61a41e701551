"""
命令行层
子命令 build / classify / verify / props 的实现
"""
