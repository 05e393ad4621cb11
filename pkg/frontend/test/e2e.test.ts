/**
 * End-to-end: the SPA rendered in JSDOM against the real HTTP service,
 * spawned as a subprocess with its own seeded data directory.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtemp, rm } from "node:fs/promises";
import net from "node:net";
import os from "node:os";
import path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { memoryTokenStore } from "../src/session.js";
import { type Dom, click, dom, submit, waitFor } from "./helpers.js";

const TOKEN = "e2e-token-rahasia-42";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = net.createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const { port } = srv.address() as net.AddressInfo;
      srv.close(() => resolve(port));
    });
  });
}

let proc: ChildProcess;
let dataDir: string;
let base: string;
let stderrLog = "";

beforeAll(async () => {
  dataDir = await mkdtemp(path.join(os.tmpdir(), "rthkp-e2e-"));
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;

  proc = spawn(
    "python3",
    ["-m", "rthkp", "serve", "--bind", `127.0.0.1:${port}`, "--data-dir", dataDir],
    { env: { ...process.env, RTHKP_ADMIN_TOKEN: TOKEN }, stdio: ["ignore", "pipe", "pipe"] },
  );
  proc.stderr!.on("data", (chunk: Buffer) => {
    stderrLog += chunk.toString();
  });

  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const resp = await fetch(`${base}/api/health`);
      if (resp.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      throw new Error(`service never came up; stderr:\n${stderrLog}`);
    }
    await new Promise((r) => setTimeout(r, 200));
  }

  const seed = await fetch(`${base}/api/admin/seed`, {
    method: "POST",
    headers: { Authorization: `Bearer ${TOKEN}` },
  });
  if (!seed.ok) throw new Error(`seeding failed: ${seed.status}`);
  const created = (await seed.json()) as { created: number };
  if (created.created !== 12) throw new Error(`expected 12 seeds, got ${created.created}`);
});

afterAll(async () => {
  if (proc && proc.exitCode === null) {
    proc.kill("SIGINT");
    await new Promise<void>((resolve) => {
      const hard = setTimeout(() => {
        proc.kill("SIGKILL");
        resolve();
      }, 5000);
      proc.once("exit", () => {
        clearTimeout(hard);
        resolve();
      });
    });
  }
  await rm(dataDir, { recursive: true, force: true });
});

function liveApp(token: string | null = null): { app: App } & Dom {
  const { doc, root, window } = dom();
  const tokens = memoryTokenStore(token);
  const app = new App({
    doc,
    root,
    api: new ApiClient({ baseUrl: base, getToken: () => tokens.get() }),
    tokens,
    history: { pushState: () => {}, replaceState: () => {} },
  });
  return { app, doc, root, window };
}

function markerCount(root: Element): number {
  return root.querySelectorAll("circle.marker").length;
}

describe("public webmap against the live service", () => {
  it("renders ten markers on the city park page and two on the nature park page", async () => {
    const { app, root } = liveApp();

    await app.render("/taman-kota");
    expect(root.querySelector("p.space-count")!.textContent).toBe("10 lokasi");
    expect(markerCount(root)).toBe(10);

    await app.render("/taman-wisata-alam");
    expect(root.querySelector("p.space-count")!.textContent).toBe("2 lokasi");
    expect(markerCount(root)).toBe(2);
  });

  it("shows all twelve on the landing page with per-category counts", async () => {
    const { app, root, window } = liveApp();
    await app.render("/");
    expect(markerCount(root)).toBe(12);
    const counts = Array.from(root.querySelectorAll(".category-counts li")).map(
      (li) => li.textContent,
    );
    expect(counts).toEqual(["Taman Kota: 10 lokasi", "Taman Wisata Alam: 2 lokasi"]);

    // a seeded marker opens its popup
    click(root.querySelector('circle[data-id="taman-monpera"]')!, window);
    expect(root.querySelector("aside.space-popup h3")!.textContent).toBe("Taman Monpera");
  });
});

describe("admin flow against the live service", () => {
  it("redirects unauthenticated /admin/content to the login page", async () => {
    const { app, root } = liveApp();
    await app.render("/admin/content");
    expect(app.currentPath).toBe("/admin");
    expect(root.querySelector("form.login-form")).not.toBeNull();
    expect(root.querySelector("table.admin-table")).toBeNull();
  });

  it("signs in with the real token and walks a create/delete round trip", async () => {
    const { app, root, window } = liveApp();

    // login through the form; the token is verified against the service
    await app.render("/admin");
    (root.querySelector('input[name="token"]') as HTMLInputElement).value = TOKEN;
    submit(root.querySelector("form.login-form")!, window);
    await waitFor(() => root.querySelectorAll("tr.space-row").length === 12, 15_000);

    // create: pick a marker by clicking the map, then submit
    await app.render("/admin/content/new");
    (root.querySelector('input[name="name"]') as HTMLInputElement).value =
      "Taman Uji Coba";
    root.querySelector(".map-box.picker svg")!.dispatchEvent(
      new window.MouseEvent("click", { bubbles: true, clientX: 320, clientY: 240 }),
    );
    await waitFor(
      () => (root.querySelector("input.marker-lon") as HTMLInputElement).value !== "",
    );
    submit(root.querySelector("form.space-form")!, window);
    await waitFor(() => root.querySelectorAll("tr.space-row").length === 13, 15_000);
    expect(root.querySelector('tr.space-row[data-id="taman-uji-coba"]')).not.toBeNull();

    // the public page sees the new space immediately
    await app.render("/taman-kota");
    expect(markerCount(root)).toBe(11);
    expect(root.querySelector("p.space-count")!.textContent).toBe("11 lokasi");

    // delete it again through the two-step button
    await app.render("/admin/content");
    await waitFor(() => root.querySelectorAll("tr.space-row").length === 13, 15_000);
    const remove = root.querySelector(
      'tr[data-id="taman-uji-coba"] button.delete-button',
    )!;
    click(remove, window);
    click(remove, window);
    await waitFor(() => root.querySelectorAll("tr.space-row").length === 12, 15_000);

    await app.render("/taman-kota");
    expect(markerCount(root)).toBe(10);
  });

  it("rejects a wrong token at the login form", async () => {
    const { app, root, window } = liveApp();
    await app.render("/admin");
    (root.querySelector('input[name="token"]') as HTMLInputElement).value = "salah";
    submit(root.querySelector("form.login-form")!, window);
    await waitFor(
      () => (root.querySelector("p.login-error")!.textContent ?? "") !== "",
      15_000,
    );
    expect(root.querySelector("p.login-error")!.textContent).toBe(
      "Token salah. Periksa kembali.",
    );
  });
});
