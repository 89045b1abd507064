"""drtbench: disperse-rotation operator workbench.

Analysis of the two-shift dispersing word map and the classic rotation as
GF(2) linear maps, parameterized HC-128 / Rabbit / Salsa20 keystream
generators using either operator at every rotation site, a NIST SP 800-22
statistical test suite, and an experiment harness that scores keystream
quality per key/IV schedule.
"""

__version__ = "0.1.0"
