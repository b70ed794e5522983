"""Quick end-to-end check of the storyuml extension module."""

import os
import tempfile

import storyuml

CAR_REPAIR = (
    "A customer calls a car repair shop to make an appointment for an oil change. "
    "The receptionist checks the availability of the mechanic and schedules the "
    "appointment for the next available time slot."
)

SINGLE = """@startuml
    left to right direction
    actor "Customer" as Cu
    rectangle {
      usecase "buy product" as UC1
    }
    Cu --> UC1
@enduml
"""


def main():
    assert storyuml.tokenize("I like to read books") == ["I", "like", "to", "read", "books"]
    assert storyuml.lemmatize("better", "ADJ") == "good"
    assert storyuml.generate("A customer buys a product.", filter=False) == SINGLE

    pipeline = storyuml.Pipeline(filter=False)
    result = pipeline.run(CAR_REPAIR)
    model = result["filtered_model"]
    assert [a["key"] for a in model["actors"]] == ["customer", "receptionist"]
    assert [u["phrase"] for u in model["associations"]["receptionist"]] == [
        "check availability",
        "schedule appointment",
    ]

    clf = storyuml.Classifier.train([("buy product", True), ("oil change", False)])
    keep, log_keep, log_drop = clf.predict("buy product")
    assert keep and log_keep > log_drop
    assert storyuml.Classifier.from_json(clf.to_json()).vocabulary == clf.vocabulary
    m = storyuml.metrics(8, 2, 2, 8)
    assert abs(m["accuracy"] - 0.8) < 1e-12

    session = storyuml.Session(model)
    assert session.apply_edit({"type": "RenameActor", "key": "customer", "new_name": "Client"}) == 1
    assert 'actor "Client" as Cl' in session.plantuml()
    try:
        session.apply_edit({"type": "AddActor", "name": "receptionist"})
    except storyuml.EditRejected as e:
        assert e.args[0] == "duplicate_actor"
    else:
        raise AssertionError("duplicate actor accepted")
    session.undo()
    assert session.model == model

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "car.json")
        storyuml.save_project(path, result, session)
        loaded, restored = storyuml.load_project(path)
        assert loaded == result and restored.model == session.model

    report = pipeline.evaluate_corpus()
    assert report["story_count"] == 8 and report["actor_pct"] >= 80.0
    print("smoke test ok:", report["identified_actors"], "/", report["actual_actors"], "actors")


if __name__ == "__main__":
    main()
