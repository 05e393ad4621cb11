/** Shared fixtures: JSDOM documents, fake fetch, history recorder. */

import { JSDOM } from "jsdom";

import type { FetchLike } from "../src/api.js";
import type { HistoryLike } from "../src/app.js";
import type {
  SpaceCollection,
  SpaceFeature,
  SpaceProperties,
} from "../src/types.js";

export interface Dom {
  window: JSDOM["window"];
  doc: Document;
  root: Element;
}

export function dom(): Dom {
  const jsdom = new JSDOM('<!doctype html><div id="app"></div>', {
    url: "http://localhost/",
  });
  const doc = jsdom.window.document;
  return { window: jsdom.window, doc, root: doc.getElementById("app")! };
}

let featureSerial = 0;

export function spaceFeature(overrides: Partial<SpaceProperties> = {}, lonlat?: [number, number]): SpaceFeature {
  featureSerial += 1;
  const props: SpaceProperties = {
    id: `taman-contoh-${featureSerial}`,
    name: `Taman Contoh ${featureSerial}`,
    category: "taman_kota",
    description: "Contoh taman.",
    facilities: ["bangku"],
    photos: [],
    created_at: "2024-01-01T00:00:00Z",
    updated_at: "2024-01-01T00:00:00Z",
    ...overrides,
  };
  return {
    type: "Feature",
    geometry: { type: "Point", coordinates: lonlat ?? [104.75, -2.97] },
    properties: props,
  };
}

export function collection(features: SpaceFeature[]): SpaceCollection {
  return { type: "FeatureCollection", features };
}

export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface RecordedCall {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: string | null;
}

export interface FakeFetch {
  fetch: FetchLike;
  calls: RecordedCall[];
}

/** Route requests through a handler and record everything sent. */
export function fakeFetch(
  handler: (call: RecordedCall) => Response | undefined,
): FakeFetch {
  const calls: RecordedCall[] = [];
  const fetch: FetchLike = async (url, init) => {
    const call: RecordedCall = {
      url,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: typeof init?.body === "string" ? init.body : null,
    };
    calls.push(call);
    const resp = handler(call);
    if (!resp) throw new TypeError(`unhandled request ${call.method} ${url}`);
    return resp;
  };
  return { fetch, calls };
}

export class FakeHistory implements HistoryLike {
  pushes: string[] = [];
  replaces: string[] = [];

  pushState(_data: unknown, _unused: string, url: string): void {
    this.pushes.push(url);
  }

  replaceState(_data: unknown, _unused: string, url: string): void {
    this.replaces.push(url);
  }
}

/** Poll until `check` stops throwing/returning false. */
export async function waitFor(
  check: () => boolean | void,
  timeoutMs = 5000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = new Error("condition never became true");
  while (Date.now() < deadline) {
    try {
      if (check() !== false) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
  throw lastError instanceof Error ? lastError : new Error(String(lastError));
}

export function click(target: Element, windowRef: Dom["window"]): void {
  target.dispatchEvent(
    new windowRef.MouseEvent("click", { bubbles: true, cancelable: true }),
  );
}

export function submit(form: Element, windowRef: Dom["window"]): void {
  form.dispatchEvent(
    new windowRef.Event("submit", { bubbles: true, cancelable: true }),
  );
}
