"use strict";

const COLUMNS = [
  ["name", "Name"],
  ["instances", "Instances"],
  ["inputs", "Inputs"],
  ["labels", "Labels"],
  ["labelsets", "Labelsets"],
  ["cardinality", "Card"],
  ["density", "Dens"],
  ["mean_ir", "MeanIR"],
  ["scumble", "SCUMBLE"],
  ["tcs", "TCS"],
  ["sparsity", "Sparsity"],
];
const STRATEGIES = ["random", "stratified", "iterative"];
const SCHEMES = ["holdout", "2x5fcv", "10cv"];
const FORMATS = ["mulan", "meka", "keel", "libsvm", "csv"];

const app = document.getElementById("app");
let index = null;
let sort = { key: "name", dir: 1 };
let query = "";

function el(tag, attrs, ...children) {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs || {})) {
    if (k === "onclick" || k === "oninput" || k === "onchange") node[k] = v;
    else node.setAttribute(k, v);
  }
  for (const c of children) node.append(c instanceof Node ? c : String(c));
  return node;
}

function show(v) {
  if (v === null || v === undefined) return "NA";
  if (typeof v === "number" && !Number.isInteger(v)) return v.toFixed(3);
  return String(v);
}

function archivePath(name, strategy, scheme, format) {
  return `partitions/${name}/${name}-${strategy}-${scheme}-${format}.tar.gz`;
}

function matches(row, q) {
  if (!q) return true;
  if (row.name.toLowerCase().includes(q.toLowerCase())) return true;
  return COLUMNS.slice(1).some(([k]) => row[k] !== null && (show(row[k]).startsWith(q) || String(row[k]).startsWith(q)));
}

function compare(a, b) {
  const x = a[sort.key], y = b[sort.key];
  if (x === y) return 0;
  if (x === null) return 1;
  if (y === null) return -1;
  return (x < y ? -1 : 1) * sort.dir;
}

function renderTable() {
  const rows = index.datasets.filter((r) => matches(r, query)).sort(compare);
  const head = el("tr", {}, ...COLUMNS.map(([k, label]) => {
    const cls = sort.key === k ? (sort.dir > 0 ? "asc" : "desc") : "";
    return el("th", { class: cls, onclick: () => {
      sort = sort.key === k ? { key: k, dir: -sort.dir } : { key: k, dir: 1 };
      renderTable();
    } }, label);
  }));
  const body = rows.length
    ? rows.map((r) => el("tr", {}, el("td", {}, el("a", { href: `#/dataset/${encodeURIComponent(r.name)}` }, r.name)),
        ...COLUMNS.slice(1).map(([k]) => el("td", {}, show(r[k])))))
    : [el("tr", {}, el("td", { colspan: COLUMNS.length, class: "muted" }, "No datasets"))];
  const search = el("input", { type: "search", placeholder: "Filter by name or value", value: query });
  search.oninput = () => { query = search.value; renderTable(); document.querySelector("input[type=search]").focus(); };
  app.replaceChildren(search, el("table", {}, el("thead", {}, head), el("tbody", {}, ...body)));
  search.setSelectionRange(query.length, query.length);
}

function panel(title, ...content) {
  return el("section", { class: "panel" }, el("h2", {}, title), ...content);
}

function table(headers, rows) {
  return el("table", {}, el("thead", {}, el("tr", {}, ...headers.map((h) => el("th", {}, h)))),
    el("tbody", {}, ...rows.map((r) => el("tr", {}, ...r.map((c) => el("td", {}, c))))));
}

function select(options) {
  return el("select", {}, ...options.map((o) => el("option", { value: o }, o)));
}

async function renderDetail(name) {
  const row = index.datasets.find((r) => r.name === name);
  if (!row) {
    app.replaceChildren(el("p", { class: "error" }, `Unknown dataset "${name}"`), el("a", { href: "#/" }, "Back"));
    return;
  }
  let d;
  try {
    d = await (await fetch(row.json)).json();
  } catch (e) {
    app.replaceChildren(el("p", { class: "error" }, `Could not load ${row.json}: ${e}`));
    return;
  }
  const m = d.measures;
  const measures = table(["Measure", "Value"], Object.entries(m).map(([k, v]) => [k, show(v)]));
  const maxCount = Math.max(1, ...d.labels.map((l) => l.count));
  const labels = table(["Label", "Count", "Frequency", "IRLbl", "SCUMBLE", ""],
    d.labels.map((l) => [l.name, l.count, show(l.frequency), show(l.irlbl), show(l.scumble),
      el("span", { class: "bar", style: `width:${(100 * l.count / maxCount).toFixed(0)}px` })]));
  const attrs = table(["Attribute", "Type"], d.attributes.map((a) => [a.name,
    a.type === "nominal" ? `nominal {${a.categories.join(", ")}}` : a.type]));

  const downloads = [];
  if (d.full) downloads.push(el("p", {}, el("a", { href: d.full.path }, `Full dataset (${d.full.format})`)));
  if (d.downloads.some((x) => x.strategy)) {
    const [st, sc, fo] = [select(STRATEGIES), select(SCHEMES), select(FORMATS)];
    const link = el("a", {}, "");
    const update = () => {
      const p = archivePath(d.name, st.value, sc.value, fo.value);
      link.setAttribute("href", p);
      link.textContent = p;
    };
    for (const s of [st, sc, fo]) s.onchange = update;
    update();
    downloads.push(el("p", {}, "Partitions: ", st, sc, fo), el("p", {}, link));
  }

  const cite = [];
  if (d.citation) {
    const copy = el("button", { onclick: () => navigator.clipboard.writeText(d.citation) }, "Copy BibTeX");
    cite.push(el("pre", {}, d.citation), copy);
  } else {
    cite.push(el("p", { class: "muted" }, "No citation available"));
  }

  app.replaceChildren(
    el("p", {}, el("a", { href: "#/" }, "← All datasets")),
    el("h2", {}, d.name),
    panel("Measures", measures),
    panel("Labels", labels),
    panel("Attributes", attrs),
    panel("Downloads", ...downloads),
    panel("Source", ...cite),
    el("p", {}, el("a", { href: row.json }, "All of this page as JSON")),
  );
}

function route() {
  const m = location.hash.match(/^#\/dataset\/(.+)$/);
  if (m) renderDetail(decodeURIComponent(m[1]));
  else renderTable();
}

fetch("json/index.json")
  .then((r) => { if (!r.ok) throw new Error(r.status); return r.json(); })
  .then((data) => {
    index = data;
    document.title = data.title;
    document.getElementById("title").replaceChildren(el("a", { href: "#/" }, data.title));
    document.documentElement.style.setProperty("--accent", data.accent_color);
    window.addEventListener("hashchange", route);
    route();
  })
  .catch((e) => app.replaceChildren(el("p", { class: "error" }, `Could not load the dataset index: ${e}`)));
