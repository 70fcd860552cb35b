"""
Repairing a lost symbol step by step
====================================
"""

# Store a 4-bit message in the 9-symbol grid code.  Each symbol sits on
# one row line and one column line, and either line can rebuild it from
# the other two symbols it contains.

from pgblrc import (
    NotLocallyRepairableError,
    blocking_set,
    build_code,
    encode,
    grid,
    line_repair_sets,
    repair_profile,
    repair_symbol,
)

code = build_code(grid(2))
word = encode(code, [1, 0, 1, 1])
print("codeword:", word.tolist())

# lose the middle symbol and look at its two repair alternatives
lost = 4
received = [int(b) for b in word]
received[lost] = None
for vec in line_repair_sets(code, lost):
    print(f"line {vec.line} repairs symbol {lost} from {vec.helpers(lost)}")

outcome = repair_symbol(code, received, lost)
print(f"repaired value {outcome.value} (truth {int(word[lost])}) "
      f"reading {outcome.retrieved} symbols via line {outcome.vector.line}")

# with one helper unavailable the executor falls back to the other line
busy = outcome.vector.helpers(lost)[0]
fallback = repair_symbol(code, received, lost, unavailable={busy})
print(f"with symbol {busy} busy, line {fallback.vector.line} answers instead")

# the tolerance is sharp: some set of delta other symbols blocks both lines
profile = repair_profile(code, mode="exhaustive")
block = blocking_set(code, lost, r=profile.r)
print(f"delta = {profile.delta}, blocking set for symbol {lost}: {sorted(block)}")
try:
    repair_symbol(code, received, lost, unavailable=block)
except NotLocallyRepairableError as exc:
    print("blocked as expected:", exc)
