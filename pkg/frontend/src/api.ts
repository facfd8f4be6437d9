// Typed client for the game service. The server computes everything;
// this module only moves JSON.

export interface HistoryPly {
  actor: "human" | "engine";
  take: string;
  pile_after: string;
  cap_after: string;
}

export interface ServerState {
  pile: string;
  cap: string;
  legal_min: string;
  legal_max: string;
  to_move: "human" | null;
  finished: boolean;
  winner: "human" | "engine" | null;
  history: HistoryPly[];
}

export interface NewGameResponse {
  session_id: string;
  state: ServerState;
  outcome_class: "N" | "P";
}

export interface MoveResponse {
  state: ServerState;
  engine_reply_move: string | null;
  outcome_class: "N" | "P";
  finished: boolean;
  winner: "human" | "engine" | null;
}

export interface HintResponse {
  move: string | null;
  zeckendorf_parts: string[];
  explanation: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  legal_min?: string;
  legal_max?: string;
}

export class ApiFailure extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(body.message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  const payload = await resp.json();
  if (!resp.ok) {
    const body: ApiErrorBody = payload?.error ?? {
      code: "unknown",
      message: `request failed with status ${resp.status}`,
    };
    throw new ApiFailure(resp.status, body);
  }
  return payload as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  newGame(alpha: string, pile: string): Promise<NewGameResponse> {
    return request(`${this.baseUrl}/api/game/new`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ alpha, pile }),
    });
  }

  move(sessionId: string, take: string): Promise<MoveResponse> {
    return request(`${this.baseUrl}/api/game/move`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ session_id: sessionId, take }),
    });
  }

  hint(sessionId: string): Promise<HintResponse> {
    return request(`${this.baseUrl}/api/game/hint?session_id=${encodeURIComponent(sessionId)}`);
  }
}
