# Annihilators and Hilbert series for the nilpotent algebras of dimension <= 5,
# next to the reference values stored in the package.
from koszulmod.invariants import NILPOTENT_REFERENCE, table_cells

mismatches = []
for key in NILPOTENT_REFERENCE:
    for cell in table_cells(key):
        flag = "ok" if cell.ok else "DIFFERS"
        print(f"{key:6} {cell.column:3} Ann = {cell.ideal}   Hilb = {cell.series}   {flag}")
        if not cell.ok:
            mismatches.append(cell)

# Print what the reference says for the cells that disagree
for cell in mismatches:
    print(f"\n{cell.algebra} {cell.column}")
    print("  computed :", cell.ideal, "|", cell.series)
    print("  reference:", cell.expected_ideal, "|", cell.expected_series)
