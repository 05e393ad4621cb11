/**
 * Typed client for the green-space service. Pure over an injected fetch
 * so tests can swap in fakes; the admin token rides only in the
 * Authorization header, never in URLs.
 */

import type {
  ApiErrorBody,
  Category,
  NearestHit,
  SpaceCollection,
  SpaceDraftBody,
  SpaceFeature,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: string[];

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiRequestError";
    this.status = body.status;
    this.code = body.code;
    this.details = body.details ?? [];
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function errorFromResponse(resp: Response): Promise<ApiRequestError> {
  try {
    const body = (await resp.json()) as ApiErrorBody;
    if (typeof body.status === "number" && typeof body.code === "string") {
      return new ApiRequestError(body);
    }
  } catch {
    // fall through to the synthesized error
  }
  return new ApiRequestError({
    status: resp.status,
    code: "error",
    message: `request failed with status ${resp.status}`,
  });
}

export class ApiClient {
  private readonly fetchFn: FetchLike;
  private readonly baseUrl: string;
  private readonly getToken: () => string | null;

  constructor(opts: {
    fetchFn?: FetchLike;
    baseUrl?: string;
    getToken?: () => string | null;
  } = {}) {
    this.fetchFn = opts.fetchFn ?? ((url, init) => globalThis.fetch(url, init));
    this.baseUrl = (opts.baseUrl ?? "").replace(/\/$/, "");
    this.getToken = opts.getToken ?? (() => null);
  }

  private async request(
    method: string,
    path: string,
    opts: { body?: unknown; auth?: boolean } = {},
  ): Promise<Response> {
    const headers: Record<string, string> = {};
    if (opts.body !== undefined) headers["Content-Type"] = "application/json";
    if (opts.auth) {
      const token = this.getToken();
      if (token) headers["Authorization"] = `Bearer ${token}`;
    }
    const resp = await this.fetchFn(this.baseUrl + path, {
      method,
      headers,
      body: opts.body === undefined ? undefined : JSON.stringify(opts.body),
    });
    if (!resp.ok) throw await errorFromResponse(resp);
    return resp;
  }

  async health(): Promise<{ status: string; revision: number }> {
    const resp = await this.request("GET", "/api/health");
    return resp.json();
  }

  async categories(): Promise<Category[]> {
    const resp = await this.request("GET", "/api/categories");
    return resp.json();
  }

  async listSpaces(filter: { category?: Category; bbox?: [number, number, number, number] } = {}): Promise<SpaceCollection> {
    const params = new URLSearchParams();
    if (filter.category) params.set("category", filter.category);
    if (filter.bbox) params.set("bbox", filter.bbox.join(","));
    const query = params.toString();
    const resp = await this.request("GET", `/api/spaces${query ? "?" + query : ""}`);
    return resp.json();
  }

  async getSpace(id: string): Promise<SpaceFeature> {
    const resp = await this.request("GET", `/api/spaces/${encodeURIComponent(id)}`);
    return resp.json();
  }

  async nearest(lon: number, lat: number, k: number): Promise<NearestHit[]> {
    const params = new URLSearchParams({
      lon: String(lon),
      lat: String(lat),
      k: String(k),
    });
    const resp = await this.request("GET", `/api/nearest?${params}`);
    return resp.json();
  }

  async createSpace(draft: SpaceDraftBody): Promise<SpaceFeature> {
    const resp = await this.request("POST", "/api/spaces", { body: draft, auth: true });
    return resp.json();
  }

  async updateSpace(id: string, patch: SpaceDraftBody): Promise<SpaceFeature> {
    const resp = await this.request(
      "PUT",
      `/api/spaces/${encodeURIComponent(id)}`,
      { body: patch, auth: true },
    );
    return resp.json();
  }

  async deleteSpace(id: string): Promise<void> {
    await this.request("DELETE", `/api/spaces/${encodeURIComponent(id)}`, {
      auth: true,
    });
  }

  async seed(force: boolean): Promise<{ created: number }> {
    const resp = await this.request(
      "POST",
      `/api/admin/seed?force=${force ? "true" : "false"}`,
      { auth: true },
    );
    return resp.json();
  }

  /**
   * Check a candidate token without mutating anything: the service is
   * reachable (health) and a deliberately invalid empty draft comes back
   * 422 (the token passed the gate) rather than 401.
   */
  async verifyToken(token: string): Promise<boolean> {
    await this.request("GET", "/api/health");
    const resp = await this.fetchFn(this.baseUrl + "/api/spaces", {
      method: "POST",
      headers: {
        "Content-Type": "application/json",
        Authorization: `Bearer ${token}`,
      },
      body: "{}",
    });
    return resp.status === 422;
  }
}
