"""
资源路径处理工具
随包发布的只读资源（预期表格）与运行时数据目录（配置、日志、输出）
"""
import os

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def get_resource_path(relative_path):
    """
    获取资源文件的绝对路径（只读资源：预期表格等）

    以项目根目录为基准，与当前工作目录无关

    Args:
        relative_path: 相对于项目根目录的路径

    Returns:
        资源文件的绝对路径

    Example:
        >>> table_path = get_resource_path('resources/tables/table3.json')
    """
    return os.path.join(PROJECT_ROOT, relative_path)


def get_data_path(relative_path=""):
    """
    获取数据目录路径（动态数据：配置、日志、报告等）

    默认使用项目根目录下的 data/，可由环境变量 LIEWEDGE_DATA_DIR 覆盖

    Args:
        relative_path: 相对于数据目录的路径（可选）

    Returns:
        数据文件的绝对路径

    Example:
        >>> config_path = get_data_path("config.json")
        >>> log_dir = get_data_path("logs")
        >>> data_dir = get_data_path()  # 只获取 data 目录本身
    """
    data_dir = os.environ.get("LIEWEDGE_DATA_DIR") or os.path.join(PROJECT_ROOT, "data")

    # 确保 data 目录存在
    if not os.path.exists(data_dir):
        os.makedirs(data_dir)

    if relative_path:
        full_path = os.path.join(data_dir, relative_path)
        # 没有文件扩展名，判断为目录
        if not os.path.splitext(relative_path)[1]:
            if not os.path.exists(full_path):
                os.makedirs(full_path)
        return full_path

    return data_dir
