import pytest

from polarlab import constructions as cons
from polarlab.canon import canonical_form
from polarlab.constructions import ConstructionId


@pytest.fixture(scope="session")
def graphs28():
    """The eight 28-vertex builds that should all be NO+(6,2)."""
    return {cid: cons.build(cid, 3) for cid in cons.EQUIVALENT_28}


@pytest.fixture(scope="session")
def no_plus3(graphs28):
    return graphs28[ConstructionId.NO_PLUS]


@pytest.fixture(scope="session")
def graphs120():
    return {
        "no_plus": cons.build_no_plus(4),
        "hole_complement": cons.build_hole(4, complement_graph=True),
        "antiflag": cons.build_antiflag_graph(4),
        "hole": cons.build_hole(4),
    }


@pytest.fixture(scope="session")
def corpus(graphs28, graphs120):
    """Every graph the package builds, keyed by a readable name."""
    out = {f"{cid.value}-3": g for cid, g in graphs28.items()}
    out["hole-3"] = cons.build_hole(3)
    for n in (2, 3, 4):
        out[f"no_plus-{n}"] = cons.build_no_plus(n)
    out["hole-2"] = cons.build_hole(2)
    out["hole_complement-2"] = cons.build_hole(2, complement_graph=True)
    out.update({f"{k}-4": g for k, g in graphs120.items()})
    return out


@pytest.fixture(scope="session")
def canon28(graphs28):
    return {cid: canonical_form(g) for cid, g in graphs28.items()}
