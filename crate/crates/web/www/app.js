import init, { construct, uniqueness, occurrence } from "./pkg/pdiag_web.js";

const esc = (s) => String(s).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);

function matrix(name, rows) {
  const body = rows.map((r) => "<tr>" + r.map((x) => `<td>${esc(x)}</td>`).join("") + "</tr>").join("");
  return `<table class="m"><caption>${name}</caption>${body}</table>`;
}

function flag(name, value) {
  if (value === null) return `<span>${name}: skipped</span>`;
  return `<span class="${value ? "ok" : "bad"}">${name}: ${value}</span>`;
}

const subset = (s) => "{" + s.join(",") + "}";

const panels = {
  construct(f) {
    const r = JSON.parse(construct(f.field.value, f.poly.value, f.head.value));
    return `<p>f(t) = ${esc(r.poly)}, d = [${r.d.map(esc).join(", ")}], b = [${r.b.map(esc).join(", ")}]</p>`
      + matrix("A", r.A) + matrix("T", r.T) + matrix("C", r.C)
      + "<p>" + [
        flag("charpoly(A) = f", r.checks.charpoly_roundtrip),
        flag("AT = TC", r.checks.similarity_ATTC),
        flag("minor system", r.checks.minor_system),
      ].join(" &middot; ") + "</p>";
  },
  uniqueness(f) {
    const r = JSON.parse(uniqueness(f.field.value, f.poly.value, f.head.value, Number(f.budget.value)));
    const same = JSON.stringify(r.witness) === JSON.stringify(r.b_closed_form);
    return `<p>${r.candidates} candidate last columns, <b>${r.solutions}</b> with the right characteristic polynomial.</p>`
      + `<p>witness [${(r.witness || []).map(esc).join(", ")}], closed form [${r.b_closed_form.map(esc).join(", ")}] `
      + flag("equal", same) + "</p>";
  },
  occurrence(f) {
    const r = JSON.parse(occurrence(Number(f.n.value), Number(f.seed.value)));
    const rows = r.rows.map((row) =>
      `<tr><td>b_${row.k}</td><td>${row.probed}</td><td>${row.sensitive.map(subset).join(" ") || "none"}</td></tr>`
    ).join("");
    return `<table class="occ"><tr><th>entry</th><th>subsets probed</th><th>sensitive</th></tr>${rows}</table>`
      + "<p>" + flag("only the trailing block {k,...,n}", r.matches_claim) + "</p>";
  },
};

await init();
for (const [id, render] of Object.entries(panels)) {
  const box = document.getElementById(id);
  const inputs = Object.fromEntries([...box.querySelectorAll("input")].map((i) => [i.name, i]));
  const out = box.querySelector(".out");
  const go = () => {
    try {
      out.innerHTML = render(inputs);
    } catch (e) {
      out.innerHTML = `<p class="err">${esc(e)}</p>`;
    }
  };
  box.querySelector("button").addEventListener("click", go);
  go();
}
