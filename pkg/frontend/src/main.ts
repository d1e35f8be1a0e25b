// Page wiring: forms on the left, the board on the right.

import { boardLayout } from "./layout.js";
import { Client, NewGameOptions, Side } from "./protocol.js";
import { boardModel, renderBoard } from "./render.js";
import { SessionStore } from "./store.js";

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const serverInput = $<HTMLInputElement>("server-url");
const sideSelect = $<HTMLSelectElement>("side");
const policySelect = $<HTMLSelectElement>("policy");
const sourceSelect = $<HTMLSelectElement>("source");
const instanceText = $<HTMLTextAreaElement>("instance-text");
const sizeInput = $<HTMLInputElement>("gen-n");
const familySelect = $<HTMLSelectElement>("gen-family");
const newGameButton = $<HTMLButtonElement>("new-game");
const hintToggle = $<HTMLInputElement>("hint-toggle");
const passButton = $<HTMLButtonElement>("pass-button");
const svg = document.getElementById("board") as unknown as SVGSVGElement;
const turnEl = $<HTMLDivElement>("turn");
const statusEl = $<HTMLDivElement>("status");
const bannerEl = $<HTMLDivElement>("banner");

let store = new SessionStore(new Client(serverInput.value));

function rewire(): void {
  store = new SessionStore(new Client(serverInput.value.replace(/\/$/, "")));
  store.subscribe(draw);
}

function draw(): void {
  const state = store.snapshot;
  const server = state.server;
  const layout = server ? boardLayout(server.n, server.edges) : [];
  const model = boardModel(state, layout, (v) => store.clickTarget(v));
  renderBoard(svg, model, state.humanSide, (v) => void store.clickVertex(v));
  turnEl.textContent = model.turnText;
  statusEl.textContent = model.statusText;
  if (model.bannerText) {
    bannerEl.textContent = model.bannerText;
    bannerEl.classList.remove("hidden");
  } else {
    bannerEl.classList.add("hidden");
  }
  passButton.classList.toggle("hidden", !store.mustPass);
}

async function startGame(): Promise<void> {
  const opts: NewGameOptions = {
    human_side: sideSelect.value as Side,
    engine_policy: policySelect.value,
  };
  if (sourceSelect.value === "paste") {
    opts.instance = instanceText.value;
  } else {
    opts.generator = {
      family: familySelect.value,
      n: Number(sizeInput.value),
      weight_mode: "uniform",
      seed: Math.floor(Math.random() * 1e9),
    };
  }
  try {
    await store.newGame(opts);
  } catch {
    draw(); // the error is already in the store state
  }
}

serverInput.addEventListener("change", () => {
  rewire();
  draw();
});
newGameButton.addEventListener("click", () => void startGame());
hintToggle.addEventListener("change", () =>
  void store.setHintEnabled(hintToggle.checked),
);
passButton.addEventListener("click", () => void store.submitPass());
sourceSelect.addEventListener("change", () => {
  instanceText.classList.toggle("hidden", sourceSelect.value !== "paste");
});

rewire();
draw();
