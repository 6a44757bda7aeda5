#!/usr/bin/env python3
"""Record real service payloads as fixtures for the browser console tests.

Drives the HTTP app in-process through one scripted session (the branch
where 3 beats 2 and then 1 beats 3) and snapshots every response the
console consumes, including the undo that must restore the earlier state.
"""

import json
import os
import tempfile

from fastapi.testclient import TestClient

from pairvote.api import create_app

OUT = os.path.join(os.path.dirname(__file__), "..", "frontend", "fixtures")


def save(name: str, payload) -> None:
    path = os.path.join(OUT, f"{name}.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {os.path.relpath(path)}")


def main() -> None:
    os.makedirs(OUT, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        client = TestClient(create_app(os.path.join(tmp, "store.jsonl")))
        created = client.post(
            "/sessions",
            json={"n": 3, "chair_pref": [1, 2, 3], "advisor": "insertion-sort"},
        ).json()
        sid = created["id"]
        save("session_fresh", created)
        save("rec_fresh", client.get(f"/sessions/{sid}/recommendation").json())
        save("whatif_12_fresh", client.get(f"/sessions/{sid}/what-if", params={"x": 1, "y": 2}).json())

        save("vote_32", client.post(f"/sessions/{sid}/votes", json={"winner": 3, "loser": 2}).json())
        save("session_after32", client.get(f"/sessions/{sid}").json())
        save("rec_after32", client.get(f"/sessions/{sid}/recommendation").json())
        save("whatif_12_after32", client.get(f"/sessions/{sid}/what-if", params={"x": 1, "y": 2}).json())

        save("vote_13", client.post(f"/sessions/{sid}/votes", json={"winner": 1, "loser": 3}).json())
        save("session_complete", client.get(f"/sessions/{sid}").json())

        save("session_undone", client.post(f"/sessions/{sid}/undo").json())


if __name__ == "__main__":
    main()
