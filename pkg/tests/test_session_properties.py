"""Stateful property test: the session document against its shadow model."""

from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import settings
from hypothesis.stateful import RuleBasedStateMachine, initialize, invariant, precondition, rule

from latentcanvas.attributes import AttributeRegistry
from latentcanvas.session import SessionDocument

from shadow import ShadowSession, assert_matches

REGISTRY = AttributeRegistry.default()
IMAGES = [f"img-{i}" for i in range(4)]
WIDTH, HEIGHT = 1000.0, 600.0

positions = st.tuples(
    st.floats(min_value=-200, max_value=1200, allow_nan=False),
    st.floats(min_value=-200, max_value=800, allow_nan=False),
)
attribute_sets = st.lists(st.sampled_from(list(REGISTRY.names)), max_size=8, unique=True)


class SessionMachine(RuleBasedStateMachine):
    @initialize()
    def setup(self):
        self.doc = SessionDocument.create("prop", width=WIDTH, height=HEIGHT)
        self.shadow = ShadowSession(
            WIDTH,
            HEIGHT,
            self.doc.current.distance_model.d_min,
            self.doc.current.distance_model.d_max,
        )

    def placed(self):
        return [p.image for p in self.doc.current.placements]

    @rule(image=st.sampled_from(IMAGES))
    def set_target(self, image):
        self.doc.set_target(image)
        self.shadow.set_target(image)

    @precondition(lambda self: self.doc.current.target is not None and len(self.placed()) < len(IMAGES))
    @rule(position=positions, data=st.data())
    def place(self, position, data):
        free = [i for i in IMAGES if i not in self.placed()]
        image = data.draw(st.sampled_from(free))
        self.doc.place_reference(image, position)
        self.shadow.place(image, position)

    @precondition(lambda self: self.placed())
    @rule(position=positions, data=st.data())
    def move(self, position, data):
        image = data.draw(st.sampled_from(self.placed()))
        self.doc.move_reference(image, position)
        self.shadow.move(image, position)

    @precondition(lambda self: self.placed())
    @rule(names=attribute_sets, data=st.data())
    def select(self, names, data):
        image = data.draw(st.sampled_from(self.placed()))
        self.doc.select_attributes(image, names, REGISTRY)
        self.shadow.select(image, names, list(REGISTRY.names))

    @precondition(lambda self: self.placed())
    @rule(data=st.data())
    def remove(self, data):
        image = data.draw(st.sampled_from(self.placed()))
        self.doc.remove_reference(image)
        self.shadow.remove(image)

    @rule()
    def undo(self):
        self.doc.undo()
        self.shadow.undo()

    @rule()
    def redo(self):
        self.doc.redo()
        self.shadow.redo()

    @precondition(lambda self: self.doc.current.target is not None)
    @rule()
    def reset(self):
        self.doc.reset()
        self.shadow.reset()

    @rule(tag=st.integers(min_value=0, max_value=999))
    def commit(self, tag):
        result = f"result-{tag}"
        self.doc.commit_generation(result)
        self.shadow.commit(result)

    @precondition(lambda self: self.doc.history)
    @rule(data=st.data())
    def restore(self, data):
        entry_id = data.draw(st.sampled_from([e.id for e in self.doc.history]))
        self.doc.restore_history(entry_id)
        self.shadow.restore(entry_id)

    @invariant()
    def models_agree(self):
        if not hasattr(self, "doc"):
            return
        assert_matches(self.doc, self.shadow)

    @invariant()
    def serialization_round_trips(self):
        if not hasattr(self, "doc"):
            return
        assert SessionDocument.loads(self.doc.dumps()).to_dict() == self.doc.to_dict()


SessionMachine.TestCase.settings = settings(max_examples=20, stateful_step_count=30, deadline=None)
TestSessionMachine = SessionMachine.TestCase
