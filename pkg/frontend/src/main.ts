/** DOM wiring for the operator console. */

import { TraceChart } from "./chart.js";
import { ConsoleController } from "./controller.js";

const REGIONS = ["Tibia", "Fibula", "Calf"];
const MATERIALS = ["TPU", "Tough PLA", "Kevlar", "Carbon fiber"];
const THICKNESSES_MM = [3.0, 4.0, 5.5, 7.5];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fillSelect(select: HTMLSelectElement, options: string[]): void {
  for (const option of options) {
    const node = document.createElement("option");
    node.value = option;
    node.textContent = option;
    select.appendChild(node);
  }
}

function main(): void {
  const controller = new ConsoleController("");
  const chart = new TraceChart(el<HTMLCanvasElement>("trace"));

  const regionSel = el<HTMLSelectElement>("region");
  const materialSel = el<HTMLSelectElement>("material");
  const thicknessSel = el<HTMLSelectElement>("thickness");
  fillSelect(regionSel, REGIONS);
  fillSelect(materialSel, MATERIALS);
  fillSelect(thicknessSel, THICKNESSES_MM.map(String));

  const startBtn = el<HTMLButtonElement>("start");
  const markBtn = el<HTMLButtonElement>("mark");
  const abortBtn = el<HTMLButtonElement>("abort");
  const overrideChk = el<HTMLInputElement>("override-rest");
  const banner = el<HTMLDivElement>("banner");
  const stateLine = el<HTMLDivElement>("state-line");
  const restLine = el<HTMLDivElement>("rest-line");
  const markResult = el<HTMLDivElement>("mark-result");
  const logList = el<HTMLUListElement>("log");

  startBtn.addEventListener("click", () => {
    const thickness = Number(thicknessSel.value);
    controller
      .start(regionSel.value, materialSel.value, thickness, overrideChk.checked)
      .catch((err) => showError(String(err)));
  });

  markBtn.addEventListener("click", () => {
    controller
      .mark()
      .then((pain) => {
        markResult.textContent =
          `pain at ${pain.force_n.toFixed(1)} N -> ${pain.ppt_mpa.toFixed(3)} MPa`;
      })
      .catch((err) => showError(String(err)));
  });

  abortBtn.addEventListener("click", () => {
    controller.abort().catch((err) => showError(String(err)));
  });

  function showError(message: string): void {
    markResult.textContent = message;
  }

  function renderTables(): void {
    const matrixBody = el<HTMLTableSectionElement>("matrix-body");
    matrixBody.innerHTML = "";
    for (const entry of controller.matrix.entries) {
      const row = document.createElement("tr");
      row.innerHTML =
        `<td>${entry.region}</td><td>${entry.material}</td>` +
        `<td>${entry.thickness_mm.toFixed(2)}</td><td>${entry.ppt_mpa.toFixed(3)}</td>`;
      matrixBody.appendChild(row);
    }

    const selectionBody = el<HTMLTableSectionElement>("selection-body");
    selectionBody.innerHTML = "";
    const selection = controller.selection;
    if (selection.complete && selection.per_region) {
      for (const [region, choice] of Object.entries(selection.per_region)) {
        const row = document.createElement("tr");
        row.innerHTML =
          `<td>${region}</td><td>${choice.material}</td>` +
          `<td>${choice.thickness_mm.toFixed(2)}</td><td>${choice.ppt_mpa.toFixed(3)}</td>`;
        selectionBody.appendChild(row);
      }
      if (selection.rest_of_socket) {
        const row = document.createElement("tr");
        row.innerHTML =
          `<td>Rest of socket</td><td>${selection.rest_of_socket.material}</td>` +
          `<td>${selection.rest_of_socket.thickness_mm.toFixed(2)}</td><td>-</td>`;
        selectionBody.appendChild(row);
      }
    } else {
      const row = document.createElement("tr");
      row.innerHTML = `<td colspan="4">incomplete; missing ${(selection.missing ?? []).join(", ")}</td>`;
      selectionBody.appendChild(row);
    }
  }

  function renderLoop(): void {
    const store = controller.store;
    chart.render(store);

    banner.hidden = store.connection !== "stale";
    if (!banner.hidden) banner.textContent = `STALE DATA - ${store.lastError ?? "disconnected"}`;

    const session = store.session;
    stateLine.textContent = session
      ? `${session.region} / ${session.material} / ${session.thickness_mm} mm - ${store.sessionState}` +
        (store.abortReason ? ` (${store.abortReason})` : "")
      : "no session";

    const rest = store.restRemainingS(Date.now());
    restLine.textContent =
      store.sessionState === "resting" ? `rest: ${rest.toFixed(0)} s remaining` : "";

    markBtn.disabled = !store.canMark;
    startBtn.disabled = !store.canStart;
    abortBtn.disabled = store.sessionState !== "resting" && store.sessionState !== "ramping";

    logList.innerHTML = store.log.map((line) => `<li>${line}</li>`).join("");
    requestAnimationFrame(renderLoop);
  }

  setInterval(() => {
    void controller.refreshResults().then(renderTables).catch(() => undefined);
  }, 2000);

  void controller.run();
  renderLoop();
}

window.addEventListener("load", main);
