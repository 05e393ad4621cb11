/** Browser entry point: bind App to the real window. */

import { App } from "./app.js";
import { ApiClient } from "./api.js";
import { sessionTokenStore } from "./session.js";

const tokens = sessionTokenStore(window.sessionStorage);
const api = new ApiClient({ getToken: () => tokens.get() });
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const app = new App({
  doc: document,
  root,
  api,
  tokens,
  history: window.history,
});

window.addEventListener("popstate", () => {
  void app.render(window.location.pathname);
});

void app.render(window.location.pathname);
