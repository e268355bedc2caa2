import os
import sys

# project root, for scripts launched from the root directory
project_path = os.path.dirname(os.path.abspath(__file__))
if project_path not in sys.path:
    sys.path.insert(0, project_path)
