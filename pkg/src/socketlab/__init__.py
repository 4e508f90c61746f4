"""socketlab: design and evaluation workbench for individualized
multi-material transtibial prosthetic sockets.

Subpackages and modules:

* ``catalog``      material / region / geometry configuration
* ``structural``   wall-stress sweeps, range merging, loads, FOS, fatigue
* ``ppt``          pressure-pain-threshold sessions, matrix, selection
* ``signals``      shared signal kernel (compiled core + numpy fallback)
* ``gait``         walking-trial kinematics metrics
* ``pressuremap``  pressure-grid and static bench analytics
* ``report``       candidate-vs-reference comparison assembly
* ``service``      local HTTP session service (live/replayed acquisition)
* ``cli``          command-line entry points
"""

__version__ = "0.1.0"
