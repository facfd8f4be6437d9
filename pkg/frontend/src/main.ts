// Bootstrap: wires the form, keeps at most one request in flight, and
// re-renders after every server confirmation.

import { ApiClient, ApiFailure } from "./api.js";
import type { BoardView } from "./board.js";
import {
  applyHint,
  applyMove,
  applyNewGame,
  applyRejection,
  clampTake,
  emptyBoard,
  inputRange,
  setPending,
  validateAlphaText,
  validatePileText,
} from "./board.js";
import { render, type Elements } from "./ui.js";

const api = new ApiClient("");

function grab(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el;
}

const els: Elements = {
  stones: grab("stones"),
  status: grab("status"),
  banner: grab("banner"),
  history: grab("history"),
  takeInput: grab("take-input") as HTMLInputElement,
  takeButton: grab("take-button") as HTMLButtonElement,
  hintButton: grab("hint-button") as HTMLButtonElement,
  hintPanel: grab("hint-panel"),
  error: grab("error"),
  rangeLabel: grab("range-label"),
};
const alphaInput = grab("alpha-input") as HTMLInputElement;
const pileInput = grab("pile-input") as HTMLInputElement;
const startButton = grab("start-button") as HTMLButtonElement;
const alphaError = grab("alpha-error");

let board: BoardView = emptyBoard();

function show(next: BoardView): void {
  board = next;
  render(board, els);
}

async function startGame(): Promise<void> {
  const alpha = alphaInput.value.trim();
  const pile = pileInput.value.trim();
  alphaError.textContent = "";
  const problem = validateAlphaText(alpha) ?? validatePileText(pile);
  if (problem !== null) {
    alphaError.textContent = problem;
    return; // no request for malformed input
  }
  show(setPending(board, true));
  try {
    const resp = await api.newGame(alpha, pile);
    show(applyNewGame(alpha, resp));
  } catch (err) {
    if (err instanceof ApiFailure) {
      show(applyRejection(setPending(board, false), err.body));
    } else {
      show({ ...setPending(board, false), error: String(err) });
    }
  }
}

async function submitMove(): Promise<void> {
  const take = clampTake(board, els.takeInput.value);
  if (take === null || board.sessionId === null) return;
  show(setPending(board, true));
  try {
    const resp = await api.move(board.sessionId, take);
    show(setPending(applyMove(board, resp), false));
  } catch (err) {
    if (err instanceof ApiFailure) {
      show(applyRejection(setPending(board, false), err.body));
    } else {
      show({ ...setPending(board, false), error: String(err) });
    }
  }
}

async function fetchHint(): Promise<void> {
  if (board.sessionId === null || board.finished || board.pending) return;
  show(setPending(board, true));
  try {
    const resp = await api.hint(board.sessionId);
    show(setPending(applyHint(board, resp), false));
  } catch (err) {
    if (err instanceof ApiFailure) {
      show(applyRejection(setPending(board, false), err.body));
    } else {
      show({ ...setPending(board, false), error: String(err) });
    }
  }
}

startButton.addEventListener("click", () => void startGame());
els.takeButton.addEventListener("click", () => void submitMove());
els.takeInput.addEventListener("keydown", (ev) => {
  if (ev.key === "Enter") void submitMove();
});
els.hintButton.addEventListener("click", () => void fetchHint());
els.takeInput.addEventListener("input", () => {
  const range = inputRange(board);
  if (range === null) return;
  const clamped = clampTake(board, els.takeInput.value);
  if (clamped !== null && clamped !== els.takeInput.value.trim()) {
    els.takeInput.value = clamped;
  }
});

show(emptyBoard());
