# hpl/__init__.py

from dotenv import load_dotenv

# Load .env when the package is imported
load_dotenv()

from .config import EngineConfig  # noqa: E402
from .workbench import Workbench  # noqa: E402

__all__ = ["EngineConfig", "Workbench"]
__version__ = "0.1.0"
