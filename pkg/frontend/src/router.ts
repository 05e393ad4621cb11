/**
 * Client-side routes mirroring the site's page structure:
 * public pages (/, /profil, /taman-kota, /taman-wisata-alam) and the
 * admin area (/admin login, /admin/content list, /admin/content/new,
 * /admin/content/{id}).
 */

import type { Category } from "./types.js";

export type Route =
  | { kind: "home" }
  | { kind: "profil" }
  | { kind: "category"; category: Category }
  | { kind: "admin-login" }
  | { kind: "admin-list" }
  | { kind: "admin-new" }
  | { kind: "admin-edit"; id: string }
  | { kind: "not-found"; path: string };

export function parseRoute(path: string): Route {
  const clean = path.split("?")[0].split("#")[0].replace(/\/+$/, "") || "/";
  switch (clean) {
    case "/":
      return { kind: "home" };
    case "/profil":
      return { kind: "profil" };
    case "/taman-kota":
      return { kind: "category", category: "taman_kota" };
    case "/taman-wisata-alam":
      return { kind: "category", category: "taman_wisata_alam" };
    case "/admin":
      return { kind: "admin-login" };
    case "/admin/content":
      return { kind: "admin-list" };
    case "/admin/content/new":
      return { kind: "admin-new" };
  }
  const edit = clean.match(/^\/admin\/content\/([a-z0-9-]+)$/);
  if (edit) return { kind: "admin-edit", id: edit[1] };
  return { kind: "not-found", path: clean };
}

export function routePath(route: Route): string {
  switch (route.kind) {
    case "home":
      return "/";
    case "profil":
      return "/profil";
    case "category":
      return route.category === "taman_kota" ? "/taman-kota" : "/taman-wisata-alam";
    case "admin-login":
      return "/admin";
    case "admin-list":
      return "/admin/content";
    case "admin-new":
      return "/admin/content/new";
    case "admin-edit":
      return `/admin/content/${route.id}`;
    case "not-found":
      return route.path;
  }
}

const GUARDED = new Set(["admin-list", "admin-new", "admin-edit"]);

/** Content-management routes require a stored token; otherwise login. */
export function guardRoute(route: Route, hasToken: boolean): Route {
  if (!hasToken && GUARDED.has(route.kind)) return { kind: "admin-login" };
  return route;
}
