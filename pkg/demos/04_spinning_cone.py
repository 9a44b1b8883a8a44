"""Chirality verdicts for a spinning cone, static and translating."""
from chiralkit.objects import CandidateFamily, chirality_verdict, spinning_cone


def show(title, obj, family=CandidateFamily()):
    v = chirality_verdict(obj, family)
    print(f"{title}\n  verdict: {v.kind.value} after {v.candidates_checked} candidates")
    if v.witness is not None:
        w = v.witness
        print(f"  witness: {v.witness_label}; v = {w.v.round(6)}")


show("static spinning cone", spinning_cone())
moving = spinning_cone(speed=0.7, base_point=(0.3, 0.5, -0.2))
show("translating cone, boosts allowed", moving, CandidateFamily(allow_boosts=True))
show("translating cone, boosts disabled", moving, CandidateFamily(allow_boosts=False))
show("translating cone through the origin, boosts disabled", spinning_cone(speed=0.7))
