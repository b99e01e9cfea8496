// Typed client for the game service. The UI never computes geometry itself:
// everything rendered comes out of these payloads.

export interface BoardJson {
  w: number;
  h: number;
  origin: [number, number];
}

export interface CellJson {
  site: [number, number];
  owner: "white" | "black";
  vertices: [number, number][];
  area: number;
}

export interface TallyJson {
  white: number;
  black: number;
}

export interface SessionState {
  id: string;
  n: number;
  board: BoardJson;
  phase: "wilma-placing" | "barney-placing" | "finished";
  predicted_winner: "wilma" | "barney";
  white: [number, number][];
  black: [number, number][];
  tally: TallyJson;
  cells: CellJson[];
  winner: "wilma" | "barney" | "tie" | null;
}

export interface AdviceJson {
  point: [number, number];
  exact_area: number;
  sampled_area: number;
  cells_stolen_from: number[];
  iterations: number;
}

export interface PreviewJson {
  tally: TallyJson;
  steal_area: number;
}

export interface GameEvent {
  seq: number;
  type: "created" | "place";
  [key: string]: unknown;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (typeof body.detail === "string") detail = body.detail;
      else detail = JSON.stringify(body.detail ?? body);
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class GameClient {
  constructor(private baseUrl: string) {}

  createSession(n: number, w: number, h: number): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      body: JSON.stringify({ n, board: { w, h } }),
    });
  }

  getSession(id: string): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${id}`);
  }

  placePoint(
    id: string,
    player: "white" | "black",
    x: number,
    y: number,
  ): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${id}/points`, {
      method: "POST",
      body: JSON.stringify({ player, x, y }),
    });
  }

  getAdvice(id: string): Promise<AdviceJson> {
    return request(`${this.baseUrl}/sessions/${id}/advice`);
  }

  preview(
    id: string,
    player: "white" | "black",
    x: number,
    y: number,
    signal?: AbortSignal,
  ): Promise<PreviewJson> {
    return request(`${this.baseUrl}/sessions/${id}/preview`, {
      method: "POST",
      body: JSON.stringify({ player, x, y }),
      signal,
    });
  }

  autoplay(id: string, player: "white" | "black" = "black"): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${id}/autoplay`, {
      method: "POST",
      body: JSON.stringify({ player }),
    });
  }

  getEvents(id: string): Promise<{ events: GameEvent[] }> {
    return request(`${this.baseUrl}/sessions/${id}/events`);
  }
}
