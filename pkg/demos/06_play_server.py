"""Play against the engine over HTTP.

Boots the game server in a background thread, creates a session on the
uniform five-path playing Alice, then follows the server's own hints to
the end. The final banner value matches the exact game value.
"""

import json
import threading
import time
import urllib.request

import uvicorn

from tronlab.service import create_app

PORT = 8642
BASE = f"http://127.0.0.1:{PORT}"


def call(method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        BASE + path, data=data, method=method,
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


server = uvicorn.Server(
    uvicorn.Config(create_app(), host="127.0.0.1", port=PORT, log_level="error")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)

p5 = open("instances/p5_uniform.tron").read()
game = call("POST", "/games", {"instance": p5, "human_side": "alice"})
gid = game["id"]
print(f"Session {gid}: playing Alice on the uniform five-path.")

analysis = call("GET", f"/games/{gid}/analysis")
print("Per-start values (the placement heatmap):")
for v, entry in sorted(analysis["per_start"].items(), key=lambda kv: int(kv[0])):
    print(f"  vertex {v}: {entry['value']}")

state = game["state"]
while not state["finished"]:
    hint = call("GET", f"/games/{gid}/hint")
    print(f"Hint: {hint['move']} (value {hint['value']})")
    reply = call("POST", f"/games/{gid}/moves", {"move": hint["move"]})
    if reply["engine_moves"]:
        print("  engine answers:", " ".join(reply["engine_moves"]))
    state = reply["state"]

final = call("GET", f"/games/{gid}")
print(f"\nGame over. Banner value: {final['outcome']['value']}")
print("Following hints as Alice realizes the exact game value, -1/5.")

server.should_exit = True
thread.join(timeout=5)
