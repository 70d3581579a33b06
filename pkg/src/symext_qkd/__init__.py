"""
Symext QKD - symmetric-extension deciders for advantage distillation.

Decides whether bipartite quantum states admit a symmetric extension, analytically
for the classes where closed forms exist and through a symmetry-reduced
semidefinite program otherwise, and applies those deciders to linear advantage
distillation in the six-state and BB84 protocols.
"""

__version__ = "0.1.0"
