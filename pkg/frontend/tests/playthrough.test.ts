// End-to-end acceptance: boot the real Python play server, create a
// P5-uniform session as Alice, follow the server's hints to the end. The
// final banner must read -1/5 and match the service outcome, and illegal
// clicks must never mutate state.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, ChildProcess } from "node:child_process";

import { Client, vertexOfCode } from "../src/protocol.js";
import { SessionStore } from "../src/store.js";

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;

const P5_TEXT = `tron v1
n 5
w 0 1/5
w 1 1/5
w 2 1/5
w 3 1/5
w 4 1/5
e 0 1
e 1 2
e 2 3
e 3 4
`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const resp = await fetch(`${BASE}/games/nope`);
      if (resp.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("play server did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    [
      "-c",
      `import uvicorn\nfrom tronlab.service import create_app\nuvicorn.run(create_app(), host="127.0.0.1", port=${PORT}, log_level="error")`,
    ],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

describe("play a uniform five-path as Alice, hints all the way", () => {
  it("lands on the exact value -1/5 and rejects illegal clicks", async () => {
    const client = new Client(BASE);
    const store = new SessionStore(client);
    await store.newGame({
      instance: P5_TEXT,
      human_side: "alice",
      engine_policy: "optimal",
    });
    await store.setHintEnabled(true);

    // placement-phase heatmap: the middle start is best for Alice
    expect(store.snapshot.heatmap?.get(2)).toBeCloseTo(-0.2);
    expect(store.snapshot.perStart?.get(0)).toBe("3/5");

    let safety = 20;
    while (!store.snapshot.server?.finished && safety-- > 0) {
      if (!store.isHumanTurn) throw new Error("engine stalled");
      if (store.mustPass) {
        expect(await store.submitPass()).toBe(true);
        continue;
      }
      const hintMove = store.snapshot.hint?.move;
      expect(hintMove).toBeTruthy();
      const vertex = vertexOfCode(hintMove!);
      if (vertex === null) {
        expect(await store.submitPass()).toBe(true);
        continue;
      }

      // an illegal click (a vertex the server did not list) is a no-op
      const claimed = [
        ...store.snapshot.server!.alice_path,
        ...store.snapshot.server!.bob_path,
      ];
      const stateBefore = store.snapshot.server;
      for (const v of claimed) {
        expect(store.clickTarget(v)).toBeNull();
        expect(await store.clickVertex(v)).toBe(false);
      }
      expect(store.snapshot.server).toEqual(stateBefore);

      expect(await store.clickVertex(vertex)).toBe(true);
    }

    expect(store.snapshot.server?.finished).toBe(true);
    expect(store.snapshot.banner?.value).toBe("-1/5");
    expect(store.snapshot.banner?.valueDecimal).toBeCloseTo(-0.2);

    // the banner matches the service's own outcome record
    const final = await client.getGame(store.snapshot.gameId!);
    expect(final.outcome?.value).toBe("-1/5");
    expect(final.state.finished).toBe(true);

    // a raw illegal request is rejected server-side and mutates nothing
    await expect(client.submitMove(store.snapshot.gameId!, "A+0")).rejects.toThrow();
    const after = await client.getGame(store.snapshot.gameId!);
    expect(after.state).toEqual(final.state);
  }, 30000);

  it("as Bob: the engine opens at the optimal start", async () => {
    const client = new Client(BASE);
    const store = new SessionStore(client);
    await store.newGame({
      instance: P5_TEXT,
      human_side: "bob",
      engine_policy: "optimal",
    });
    expect(store.snapshot.lastEngineMoves).toEqual(["A+2"]);
    expect(store.snapshot.server?.alice_path).toEqual([2]);
    expect(store.isHumanTurn).toBe(true);
  }, 30000);
});
