import os
import sys

# project root, so that "import core.operators" and "from config import opts" resolve
package_path = os.path.dirname(os.path.abspath(__file__))
project_path = os.path.dirname(package_path)
if project_path not in sys.path:
    sys.path.insert(0, project_path)
