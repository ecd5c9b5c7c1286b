"""realset: sets of real numbers as deterministic omega-automata.

Library entry points live in the submodules:

- :mod:`realset.numeric` — exact encodings and number theory
- :mod:`realset.automata` — the omega-automaton algebra
- :mod:`realset.rna` — number-level set operations
- :mod:`realset.arith` — the ⟨ℝ,ℤ,+,<⟩ formula compiler
- :mod:`realset.lab` — desk-scale experiments
- :mod:`realset.service` — the FastAPI wrapper
"""

__version__ = "0.1.0"
