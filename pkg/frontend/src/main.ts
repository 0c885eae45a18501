import { ApiClient } from "./api.js";
import { App } from "./app.js";

function apiBase(): string {
  // served by the workbench itself -> same origin; otherwise ?api=<url>
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "";
}

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error('missing <div id="app">');
  }
  new App(root, new ApiClient(apiBase()));
});
