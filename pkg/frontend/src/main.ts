import { ApiClient } from "./api";
import { EditorStore } from "./store";
import { createApp } from "./ui/app";
import "./style.css";

const baseUrl =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

createApp(root, new EditorStore(), new ApiClient(baseUrl));
