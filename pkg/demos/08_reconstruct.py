"""Recover an operadic category from nothing but its tensor and structure maps."""
from opcat import builders
from opcat.skew import expose_interface, reconstruct, same_tables

for name, oc in [("S(2)", builders.build_S(2)), ("P(2)", builders.build_P(2)),
                 ("bouquets", builders.build_bouquets(["r", "g"], 1))]:
    iface = expose_interface(oc)
    rc = reconstruct(iface)
    print(f"{name:9s} morphisms: {len(rc.morphisms):3d}  identical tables: {same_tables(oc, rc)}")
