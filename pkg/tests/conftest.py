from hypothesis import settings
from hypothesis import strategies as st

from braidorder.surface import SurfaceElem, presentation
from braidorder.words import Word, gens

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def words(rank=3, max_size=6, name="x"):
    letters = st.tuples(st.sampled_from(gens(name, rank)), st.sampled_from((1, -1)))
    return st.lists(letters, max_size=max_size).map(Word)


def surface_elems(genus=2, max_size=5):
    p = presentation(genus)
    letters = st.tuples(st.sampled_from(p.generators), st.sampled_from((1, -1)))
    return st.lists(letters, max_size=max_size).map(lambda ls: SurfaceElem(Word(ls), genus))
