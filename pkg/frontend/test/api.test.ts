import { describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError } from "../src/api.js";
import { collection, fakeFetch, jsonResponse, spaceFeature } from "./helpers.js";

const TOKEN = "rahasia-123";

function client(fetchImpl: ReturnType<typeof fakeFetch>, token: string | null = null) {
  return new ApiClient({
    fetchFn: fetchImpl.fetch,
    getToken: () => token,
  });
}

describe("ApiClient request building", () => {
  it("builds the spaces query from category and bbox", async () => {
    const ff = fakeFetch(() => jsonResponse(200, collection([])));
    const api = client(ff);
    await api.listSpaces({ category: "taman_kota", bbox: [104.6, -3.1, 104.9, -2.85] });
    expect(ff.calls[0].url).toBe(
      "/api/spaces?category=taman_kota&bbox=104.6%2C-3.1%2C104.9%2C-2.85",
    );
    expect(ff.calls[0].method).toBe("GET");
  });

  it("requests plain /api/spaces when no filters are given", async () => {
    const ff = fakeFetch(() => jsonResponse(200, collection([])));
    await client(ff).listSpaces();
    expect(ff.calls[0].url).toBe("/api/spaces");
  });

  it("escapes ids in paths", async () => {
    const ff = fakeFetch(() => jsonResponse(200, spaceFeature()));
    await client(ff).getSpace("taman/aneh");
    expect(ff.calls[0].url).toBe("/api/spaces/taman%2Faneh");
  });

  it("builds the nearest query", async () => {
    const ff = fakeFetch(() => jsonResponse(200, []));
    await client(ff).nearest(104.75, -2.97, 3);
    expect(ff.calls[0].url).toBe("/api/nearest?lon=104.75&lat=-2.97&k=3");
  });

  it("prefixes a configured base URL", async () => {
    const ff = fakeFetch(() => jsonResponse(200, { status: "ok", revision: 0 }));
    const api = new ApiClient({
      fetchFn: ff.fetch,
      baseUrl: "http://127.0.0.1:9",
      getToken: () => null,
    });
    await api.health();
    expect(ff.calls[0].url).toBe("http://127.0.0.1:9/api/health");
  });
});

describe("ApiClient auth handling", () => {
  it("sends the bearer token on mutations only, never in the URL", async () => {
    const ff = fakeFetch((call) => {
      if (call.method === "GET") return jsonResponse(200, collection([]));
      if (call.method === "POST") return jsonResponse(201, spaceFeature());
      return jsonResponse(204, null);
    });
    const api = client(ff, TOKEN);
    await api.listSpaces();
    await api.createSpace({ name: "X", category: "taman_kota", marker: [104.7, -2.9] });

    const [read, write] = ff.calls;
    expect(read.headers.Authorization).toBeUndefined();
    expect(write.headers.Authorization).toBe(`Bearer ${TOKEN}`);
    for (const call of ff.calls) {
      expect(call.url).not.toContain(TOKEN);
    }
  });

  it("omits the Authorization header when no token is stored", async () => {
    const ff = fakeFetch(() =>
      jsonResponse(401, {
        status: 401,
        code: "unauthorized",
        message: "missing or invalid bearer token",
      }),
    );
    await expect(client(ff).deleteSpace("taman-x")).rejects.toThrow(ApiRequestError);
    expect(ff.calls[0].headers.Authorization).toBeUndefined();
  });
});

describe("ApiClient error mapping", () => {
  it("turns an error envelope into ApiRequestError fields", async () => {
    const ff = fakeFetch(() =>
      jsonResponse(422, {
        status: 422,
        code: "validation",
        message: "draft is invalid",
        details: ["lat out of range (95.0)"],
      }),
    );
    const err = await client(ff, TOKEN)
      .createSpace({ name: "X", category: "taman_kota", marker: [104.7, 95] })
      .then(
        () => null,
        (e: unknown) => e as ApiRequestError,
      );
    expect(err).toBeInstanceOf(ApiRequestError);
    expect(err!.status).toBe(422);
    expect(err!.code).toBe("validation");
    expect(err!.message).toBe("draft is invalid");
    expect(err!.details).toEqual(["lat out of range (95.0)"]);
  });

  it("synthesizes an error when the body is not an envelope", async () => {
    const ff = fakeFetch(() => new Response("boom", { status: 500 }));
    const err = await client(ff)
      .health()
      .then(
        () => null,
        (e: unknown) => e as ApiRequestError,
      );
    expect(err).toBeInstanceOf(ApiRequestError);
    expect(err!.status).toBe(500);
    expect(err!.code).toBe("error");
    expect(err!.message).toBe("request failed with status 500");
  });

  it("parses 204 deletes without touching the body", async () => {
    const ff = fakeFetch(() => new Response(null, { status: 204 }));
    await expect(client(ff, TOKEN).deleteSpace("taman-x")).resolves.toBeUndefined();
  });
});

describe("verifyToken", () => {
  function probeFetch(probeStatus: number, healthStatus = 200) {
    return fakeFetch((call) => {
      if (call.url.endsWith("/api/health")) {
        return healthStatus === 200
          ? jsonResponse(200, { status: "ok", revision: 1 })
          : new Response("nope", { status: healthStatus });
      }
      if (call.method === "POST" && call.url.endsWith("/api/spaces")) {
        return jsonResponse(probeStatus, {
          status: probeStatus,
          code: probeStatus === 422 ? "validation" : "unauthorized",
          message: "probe",
        });
      }
      return undefined;
    });
  }

  it("accepts a token whose empty-draft probe fails validation, not auth", async () => {
    const ff = probeFetch(422);
    await expect(client(ff).verifyToken(TOKEN)).resolves.toBe(true);
    const probe = ff.calls.find((c) => c.method === "POST")!;
    expect(probe.headers.Authorization).toBe(`Bearer ${TOKEN}`);
    expect(probe.body).toBe("{}");
    expect(probe.url).not.toContain(TOKEN);
  });

  it("rejects a token the service answers with 401", async () => {
    await expect(client(probeFetch(401)).verifyToken("salah")).resolves.toBe(false);
  });

  it("propagates an unreachable service instead of reporting a bad token", async () => {
    const ff = fakeFetch(() => {
      throw new TypeError("fetch failed");
    });
    await expect(client(ff).verifyToken(TOKEN)).rejects.toThrow(TypeError);
  });
});
