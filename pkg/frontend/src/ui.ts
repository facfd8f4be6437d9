// DOM rendering. Everything shown is read from the BoardView, which in
// turn mirrors the last server-confirmed state.

import type { BoardView } from "./board.js";
import { inputRange } from "./board.js";

export interface Elements {
  stones: HTMLElement;
  status: HTMLElement;
  banner: HTMLElement;
  history: HTMLElement;
  takeInput: HTMLInputElement;
  takeButton: HTMLButtonElement;
  hintButton: HTMLButtonElement;
  hintPanel: HTMLElement;
  error: HTMLElement;
  rangeLabel: HTMLElement;
}

const MAX_DRAWN_STONES = 400n;

function drawStones(target: HTMLElement, pile: bigint): void {
  target.textContent = "";
  if (pile > MAX_DRAWN_STONES) {
    const note = document.createElement("div");
    note.className = "pile-count";
    note.textContent = `${pile} stones`;
    target.appendChild(note);
    return;
  }
  const count = Number(pile);
  for (let i = 0; i < count; i += 5) {
    const group = document.createElement("span");
    group.className = "stone-group";
    for (let j = i; j < Math.min(i + 5, count); j++) {
      const stone = document.createElement("span");
      stone.className = "stone";
      group.appendChild(stone);
    }
    target.appendChild(group);
  }
  const label = document.createElement("div");
  label.className = "pile-count";
  label.textContent = `${pile} stone${pile === 1n ? "" : "s"}`;
  target.appendChild(label);
}

export function render(board: BoardView, el: Elements): void {
  drawStones(el.stones, board.pile);

  if (board.status !== null && !board.finished) {
    el.status.textContent =
      board.status === "N" ? "you can win from here" : "losing position (with perfect play)";
    el.status.dataset.outcome = board.status;
  } else {
    el.status.textContent = "";
    delete el.status.dataset.outcome;
  }

  if (board.finished && board.winner !== null) {
    el.banner.textContent = board.winner === "human" ? "You win!" : "Engine wins.";
    el.banner.dataset.winner = board.winner;
    el.banner.hidden = false;
  } else {
    el.banner.hidden = true;
  }

  const range = inputRange(board);
  el.takeInput.disabled = range === null;
  el.takeButton.disabled = range === null;
  el.hintButton.disabled = board.sessionId === null || board.finished || board.pending;
  if (range !== null) {
    el.takeInput.min = range.min.toString();
    el.takeInput.max = range.max.toString();
    el.rangeLabel.textContent = `take ${range.min}..${range.max}`;
  } else {
    el.rangeLabel.textContent = "";
  }

  el.history.textContent = "";
  for (const ply of board.history) {
    const item = document.createElement("li");
    item.textContent = `${ply.actor} took ${ply.take} -> pile ${ply.pile_after}, cap ${ply.cap_after}`;
    el.history.appendChild(item);
  }
  if (board.lastEngineReply !== null && !board.finished) {
    const item = document.createElement("li");
    item.className = "engine-reply";
    item.textContent = `engine replied ${board.lastEngineReply}`;
    el.history.appendChild(item);
  }

  if (board.hint !== null) {
    const parts = board.hint.zeckendorf_parts;
    const smallest = parts[0];
    el.hintPanel.hidden = false;
    el.hintPanel.textContent = "";
    const headline = document.createElement("div");
    headline.textContent =
      board.hint.move !== null ? `suggested take: ${board.hint.move}` : "no move available";
    el.hintPanel.appendChild(headline);
    const partsLine = document.createElement("div");
    partsLine.className = "hint-parts";
    partsLine.append("pile parts: ");
    parts.forEach((part, i) => {
      const chip = document.createElement("span");
      chip.className = part === smallest ? "part smallest" : "part";
      chip.textContent = part;
      partsLine.appendChild(chip);
      if (i < parts.length - 1) partsLine.append(" + ");
    });
    el.hintPanel.appendChild(partsLine);
    const why = document.createElement("div");
    why.className = "hint-why";
    why.textContent = board.hint.explanation;
    el.hintPanel.appendChild(why);
  } else {
    el.hintPanel.hidden = true;
  }

  el.error.textContent = board.error ?? "";
  el.error.hidden = board.error === null;
}
