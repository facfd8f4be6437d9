// Pure board model. Every reducer copies the server-confirmed state
// verbatim; the UI never predicts a move outcome on its own, so the
// rendered board can never drift from the server.

import type {
  ApiErrorBody,
  HintResponse,
  HistoryPly,
  MoveResponse,
  NewGameResponse,
  ServerState,
} from "./api.js";

export interface BoardView {
  sessionId: string | null;
  alphaText: string;
  pile: bigint;
  cap: bigint;
  legalMin: bigint;
  legalMax: bigint;
  status: "N" | "P" | null;
  finished: boolean;
  winner: "human" | "engine" | null;
  history: HistoryPly[];
  lastEngineReply: string | null;
  hint: HintResponse | null;
  pending: boolean;
  error: string | null;
}

export function emptyBoard(): BoardView {
  return {
    sessionId: null,
    alphaText: "",
    pile: 0n,
    cap: 0n,
    legalMin: 0n,
    legalMax: 0n,
    status: null,
    finished: false,
    winner: null,
    history: [],
    lastEngineReply: null,
    hint: null,
    pending: false,
    error: null,
  };
}

function absorbState(board: BoardView, state: ServerState): BoardView {
  return {
    ...board,
    pile: BigInt(state.pile),
    cap: BigInt(state.cap),
    legalMin: BigInt(state.legal_min),
    legalMax: BigInt(state.legal_max),
    finished: state.finished,
    winner: state.winner,
    history: state.history,
  };
}

export function applyNewGame(alphaText: string, resp: NewGameResponse): BoardView {
  return {
    ...absorbState(emptyBoard(), resp.state),
    sessionId: resp.session_id,
    alphaText,
    status: resp.outcome_class,
  };
}

export function applyMove(board: BoardView, resp: MoveResponse): BoardView {
  return {
    ...absorbState(board, resp.state),
    status: resp.outcome_class,
    lastEngineReply: resp.engine_reply_move,
    hint: null,
    error: null,
  };
}

export function applyHint(board: BoardView, resp: HintResponse): BoardView {
  return { ...board, hint: resp, error: null };
}

// A rejected request leaves the confirmed state untouched.
export function applyRejection(board: BoardView, error: ApiErrorBody): BoardView {
  const range =
    error.legal_min !== undefined && error.legal_max !== undefined
      ? ` (legal range ${error.legal_min}..${error.legal_max})`
      : "";
  return { ...board, error: `${error.message}${range}` };
}

export function setPending(board: BoardView, pending: boolean): BoardView {
  return { ...board, pending };
}

// Enabled take range for the input control; null means the control is
// disabled (no game, game over, or a request in flight).
export function inputRange(board: BoardView): { min: bigint; max: bigint } | null {
  if (board.sessionId === null || board.finished || board.pending) {
    return null;
  }
  if (board.legalMax < 1n) {
    return null;
  }
  return { min: board.legalMin < 1n ? 1n : board.legalMin, max: board.legalMax };
}

export function clampTake(board: BoardView, raw: string): string | null {
  const range = inputRange(board);
  if (range === null || !/^\d+$/.test(raw.trim())) {
    return null;
  }
  let take = BigInt(raw.trim());
  if (take < range.min) take = range.min;
  if (take > range.max) take = range.max;
  return take.toString();
}

// Local pre-flight check so malformed input never reaches the server.
// Accepts "2", "7/2" and exact decimals like "3.5"; anything else (or a
// value below 1) returns an error message.
export function validateAlphaText(text: string): string | null {
  const trimmed = text.trim();
  const fraction = trimmed.match(/^(\d+)\/(\d+)$/);
  if (fraction !== null) {
    const num = BigInt(fraction[1]!);
    const den = BigInt(fraction[2]!);
    if (den === 0n) return "alpha must have a nonzero denominator";
    if (num < den) return "alpha must be at least 1";
    return null;
  }
  if (!/^\d+(\.\d+)?$/.test(trimmed)) {
    return "alpha must look like 2, 7/2 or 3.5";
  }
  if (parseFloat(trimmed) < 1) return "alpha must be at least 1";
  return null;
}

export function validatePileText(text: string): string | null {
  return /^\d+$/.test(text.trim()) ? null : "pile must be a nonnegative integer";
}
