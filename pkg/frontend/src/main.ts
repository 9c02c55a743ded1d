import { renderBanner } from "./render";
import { Viewer } from "./viewer";
import "./style.css";

const banner = document.getElementById("banner") as HTMLElement;
const code = document.getElementById("code") as HTMLElement;

const file = new URLSearchParams(window.location.search).get("file");
if (file === null || file === "") {
  renderBanner(banner, "add ?file=<name> to the URL to pick a traced source file");
} else {
  document.title = `samp – ${file}`;
  void new Viewer(file, { banner, code }).load();
}
