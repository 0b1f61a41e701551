# liewedge 核心模块
