/**
 * Route dispatcher: renders the shell, guards admin routes, and hands
 * the <main> element to the matching page renderer. History integration
 * is injected so tests can drive navigation without a browser.
 */

import { renderAdminForm, renderAdminList, renderLogin } from "./admin.js";
import { ApiClient } from "./api.js";
import { guardRoute, parseRoute, routePath, type Route } from "./router.js";
import type { TokenStore } from "./session.js";
import {
  renderCategoryPage,
  renderErrorBanner,
  renderHome,
  renderNotFound,
  renderProfil,
  renderShell,
} from "./views.js";

export interface HistoryLike {
  pushState(data: unknown, unused: string, url: string): void;
  replaceState(data: unknown, unused: string, url: string): void;
}

export interface AppOptions {
  doc: Document;
  root: Element;
  api: ApiClient;
  tokens: TokenStore;
  history: HistoryLike;
}

export class App {
  private readonly doc: Document;
  private readonly root: Element;
  private readonly api: ApiClient;
  private readonly tokens: TokenStore;
  private readonly history: HistoryLike;
  /** Path most recently rendered (after guarding). */
  currentPath = "/";

  constructor(opts: AppOptions) {
    this.doc = opts.doc;
    this.root = opts.root;
    this.api = opts.api;
    this.tokens = opts.tokens;
    this.history = opts.history;
    this.root.addEventListener("click", (ev) => this.onClick(ev));
  }

  /** Intercept in-app links (`a[data-link]`) instead of full reloads. */
  private onClick(ev: Event): void {
    const target = ev.target as Element | null;
    const anchor = target?.closest?.("a[data-link]");
    const href = anchor?.getAttribute("href");
    if (!href) return;
    ev.preventDefault();
    this.navigate(href);
  }

  navigate(path: string): void {
    this.history.pushState(null, "", path);
    void this.render(path);
  }

  /** Render `path`, redirecting guarded admin routes to the login page. */
  async render(path: string): Promise<void> {
    const requested = parseRoute(path);
    const route = guardRoute(requested, this.tokens.get() !== null);
    if (route !== requested) {
      this.history.replaceState(null, "", routePath(route));
    }
    this.currentPath = routePath(route);
    const main = renderShell(this.doc, this.root, route);
    try {
      await this.renderPage(route, main);
    } catch {
      renderErrorBanner(
        this.doc,
        main,
        "Tidak dapat memuat data dari layanan.",
        () => void this.render(path),
      );
    }
  }

  private async renderPage(route: Route, main: HTMLElement): Promise<void> {
    const adminDeps = {
      doc: this.doc,
      api: this.api,
      tokens: this.tokens,
      navigate: (path: string) => this.navigate(path),
    };
    switch (route.kind) {
      case "home":
        return renderHome(this.doc, main, this.api);
      case "profil":
        return renderProfil(this.doc, main);
      case "category":
        return renderCategoryPage(this.doc, main, this.api, route.category);
      case "admin-login":
        return renderLogin(adminDeps, main);
      case "admin-list":
        return renderAdminList(adminDeps, main);
      case "admin-new":
        return renderAdminForm(adminDeps, main, null);
      case "admin-edit":
        return renderAdminForm(adminDeps, main, route.id);
      case "not-found":
        return renderNotFound(this.doc, main, route.path);
    }
  }
}
