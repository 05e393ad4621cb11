/**
 * Public page renderers. Every function takes the Document it should
 * build nodes with, so views run unchanged in the browser and in tests.
 */

import { ApiClient } from "./api.js";
import { renderMap } from "./map.js";
import type { Route } from "./router.js";
import { routePath } from "./router.js";
import {
  CATEGORY_LABELS,
  type Category,
  type SpaceFeature,
  boundaryOf,
  markerOf,
} from "./types.js";

type Child = Node | string;

/** Tiny element builder; class goes in attrs.class. */
export function el(
  doc: Document,
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElement {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) {
    node.append(typeof child === "string" ? doc.createTextNode(child) : child);
  }
  return node;
}

const NAV_ITEMS: Array<[string, string]> = [
  ["Beranda", "/"],
  ["Profil", "/profil"],
  ["Taman Kota", "/taman-kota"],
  ["Taman Wisata Alam", "/taman-wisata-alam"],
  ["Admin", "/admin"],
];

/**
 * Header, navigation and an empty <main>; returns the <main> the page
 * renderer should fill. Rebuilt on every route change — the state lives
 * in the URL and the API, not in the DOM.
 */
export function renderShell(doc: Document, root: Element, route: Route): HTMLElement {
  root.replaceChildren();
  const current = routePath(route);
  const nav = el(doc, "nav", { class: "site-nav" });
  for (const [label, href] of NAV_ITEMS) {
    const active =
      href === current || (href === "/admin" && current.startsWith("/admin"));
    nav.append(
      el(doc, "a", { href, "data-link": "", class: active ? "active" : "" }, label),
    );
  }
  const header = el(
    doc,
    "header",
    { class: "site-header" },
    el(doc, "h1", {}, "RTHKP Kota Palembang"),
    el(doc, "p", { class: "tagline" }, "Sistem informasi geografis ruang terbuka hijau kawasan perkotaan"),
    nav,
  );
  const main = el(doc, "main", { id: "view" });
  root.append(header, main);
  return main;
}

/** Failure panel with a retry hook; navigation stays usable above it. */
export function renderErrorBanner(
  doc: Document,
  main: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  main.replaceChildren();
  const button = el(doc, "button", { class: "retry" }, "Coba lagi");
  button.addEventListener("click", onRetry);
  main.append(
    el(
      doc,
      "div",
      { class: "error-banner", role: "alert" },
      el(doc, "p", {}, message),
      button,
    ),
  );
}

function photoStrip(doc: Document, feature: SpaceFeature): HTMLElement | null {
  if (feature.properties.photos.length === 0) return null;
  const strip = el(doc, "div", { class: "photo-strip" });
  for (const path of feature.properties.photos) {
    strip.append(
      el(doc, "img", {
        src: `/${path}`,
        alt: feature.properties.name,
        class: "photo-thumb",
        loading: "lazy",
      }),
    );
  }
  return strip;
}

/** Detail card shown when a marker or list row is selected. */
export function renderSpacePopup(doc: Document, feature: SpaceFeature): HTMLElement {
  const props = feature.properties;
  const popup = el(
    doc,
    "aside",
    { class: "space-popup", "data-id": props.id },
    el(doc, "h3", {}, props.name),
    el(doc, "p", { class: "popup-category" }, CATEGORY_LABELS[props.category]),
  );
  if (props.description) popup.append(el(doc, "p", {}, props.description));
  if (props.facilities.length > 0) {
    const list = el(doc, "ul", { class: "facility-list" });
    for (const item of props.facilities) list.append(el(doc, "li", {}, item));
    popup.append(list);
  }
  const strip = photoStrip(doc, feature);
  if (strip) popup.append(strip);
  return popup;
}

interface MapPageParts {
  mapBox: HTMLElement;
  popupBox: HTMLElement;
}

function buildMapWithPopup(
  doc: Document,
  features: SpaceFeature[],
  selectedId: string | null,
): MapPageParts {
  const popupBox = el(doc, "div", { class: "popup-box" });
  const mapBox = el(doc, "div", { class: "map-box" });

  const draw = (selected: string | null) => {
    const markers = features.map((f) => {
      const [lon, lat] = markerOf(f);
      return {
        id: f.properties.id,
        lon,
        lat,
        title: f.properties.name,
        category: f.properties.category,
        selected: f.properties.id === selected,
      };
    });
    const boundaries = features
      .map(boundaryOf)
      .filter((ring): ring is NonNullable<ReturnType<typeof boundaryOf>> => ring !== null);
    const svg = renderMap(doc, {
      markers,
      boundaries,
      onMarkerClick: (id) => {
        const hit = features.find((f) => f.properties.id === id);
        popupBox.replaceChildren();
        if (hit) popupBox.append(renderSpacePopup(doc, hit));
        draw(id);
      },
    });
    mapBox.replaceChildren(svg);
  };
  draw(selectedId);
  return { mapBox, popupBox };
}

/** Landing page: every space on one map plus per-category counts. */
export async function renderHome(doc: Document, main: HTMLElement, api: ApiClient): Promise<void> {
  const collection = await api.listSpaces();
  main.replaceChildren();
  const byCategory = new Map<Category, number>();
  for (const f of collection.features) {
    byCategory.set(f.properties.category, (byCategory.get(f.properties.category) ?? 0) + 1);
  }
  const counts = el(doc, "ul", { class: "category-counts" });
  for (const [category, label] of Object.entries(CATEGORY_LABELS) as Array<[Category, string]>) {
    counts.append(
      el(doc, "li", { "data-category": category }, `${label}: ${byCategory.get(category) ?? 0} lokasi`),
    );
  }
  const { mapBox, popupBox } = buildMapWithPopup(doc, collection.features, null);
  main.append(
    el(
      doc,
      "section",
      { class: "page page-home" },
      el(doc, "h2", {}, "Sebaran Ruang Terbuka Hijau"),
      el(
        doc,
        "p",
        {},
        "Peta sebaran ruang terbuka hijau kawasan perkotaan di Kota Palembang. " +
          "Pilih penanda pada peta untuk melihat rincian lokasi.",
      ),
      counts,
      mapBox,
      popupBox,
    ),
  );
}

/** Static profile page: the office and what counts as RTHKP. */
export function renderProfil(doc: Document, main: HTMLElement): void {
  main.replaceChildren();
  main.append(
    el(
      doc,
      "section",
      { class: "page page-profil" },
      el(doc, "h2", {}, "Profil"),
      el(
        doc,
        "p",
        {},
        "Layanan ini dikelola untuk mendukung Dinas Lingkungan Hidup dan " +
          "Kebersihan Kota Palembang dalam menyajikan informasi sebaran " +
          "ruang terbuka hijau kawasan perkotaan (RTHKP) kepada masyarakat.",
      ),
      el(
        doc,
        "p",
        {},
        "RTHKP adalah bagian dari ruang kota yang diisi tumbuhan dan " +
          "tanaman untuk mendukung fungsi ekologis, sosial, budaya, dan " +
          "estetika kota — di antaranya taman kota dan taman wisata alam.",
      ),
      el(
        doc,
        "p",
        {},
        "Gunakan menu Taman Kota dan Taman Wisata Alam untuk menjelajahi " +
          "lokasi per kategori, lengkap dengan deskripsi, fasilitas, dan foto.",
      ),
    ),
  );
}

/** Category page: markers for every feature in one category. */
export async function renderCategoryPage(
  doc: Document,
  main: HTMLElement,
  api: ApiClient,
  category: Category,
): Promise<void> {
  const collection = await api.listSpaces({ category });
  main.replaceChildren();
  const { mapBox, popupBox } = buildMapWithPopup(doc, collection.features, null);

  const listing = el(doc, "ul", { class: "space-list" });
  for (const feature of collection.features) {
    const item = el(
      doc,
      "li",
      { class: "space-list-item", "data-id": feature.properties.id },
      el(doc, "strong", {}, feature.properties.name),
    );
    if (feature.properties.description) {
      item.append(el(doc, "p", {}, feature.properties.description));
    }
    item.addEventListener("click", () => {
      popupBox.replaceChildren(renderSpacePopup(doc, feature));
    });
    listing.append(item);
  }

  main.append(
    el(
      doc,
      "section",
      { class: `page page-${category}` },
      el(doc, "h2", {}, `Peta ${CATEGORY_LABELS[category]}`),
      el(doc, "p", { class: "space-count" }, `${collection.features.length} lokasi`),
      mapBox,
      popupBox,
      listing,
    ),
  );
}

/** 404 for paths outside the route table. */
export function renderNotFound(doc: Document, main: HTMLElement, path: string): void {
  main.replaceChildren();
  main.append(
    el(
      doc,
      "section",
      { class: "page page-not-found" },
      el(doc, "h2", {}, "Halaman tidak ditemukan"),
      el(doc, "p", {}, `Tidak ada halaman untuk alamat ${path}.`),
      el(doc, "a", { href: "/", "data-link": "" }, "Kembali ke beranda"),
    ),
  );
}
