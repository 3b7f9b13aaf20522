"""Walk both modulation codes through a handful of writes, printing state.

The self-randomized code stores a k-bit value in 2**k cells; the
load-balancing one spends 2**(k+1) cells to get two candidate cells per
write.  Watch the level vectors grow and the decoder track every write.
"""

from flashmod import CellState, CodeKind, CodeParams, WriteKind, make_code

print("=== self-randomized code, k=2 (4 values in 4 cells), q=4 ===")
params = CodeParams(k=2, l=2, q=4, kind=CodeKind.SELF_RANDOMIZED)
code = make_code(params)
state = CellState.zeros(params.n, params.q)

for value in [3, 1, 1, 2, 0, 3, 2]:
    outcome = code.encode(state, value)
    if outcome.kind is WriteKind.ERASE_REQUIRED:
        print(f"write {value}: erase required, state unchanged {state.levels}")
        break
    where = f"cell {outcome.cell}" if outcome.is_written else "no-op"
    print(f"write {value}: {where:7s} state={state.levels} decode={code.decode(state)}")

print()
print("=== load-balancing code, k=1 (2 values in 4 cells), q=4 ===")
params = CodeParams(k=1, l=2, q=4, kind=CodeKind.LOAD_BALANCING)
code = make_code(params)
state = CellState.zeros(params.n, params.q)

for value in [1, 0, 1, 0, 1, 0, 1]:
    cands = code.candidate_cells(state, value)
    outcome = code.encode(state, value)
    if outcome.kind is WriteKind.ERASE_REQUIRED:
        print(f"write {value}: candidates {cands} both full, erase required")
        break
    where = f"cell {outcome.cell}" if outcome.is_written else "no-op"
    print(f"write {value}: candidates {cands} -> {where:7s} state={state.levels} decode={code.decode(state)}")

print()
print("The write that would push a cell past q-1 is signalled, not applied;")
print("the block erase (reset to all-zero) belongs to the simulation layer.")
