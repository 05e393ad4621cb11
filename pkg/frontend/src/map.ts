/**
 * Self-contained SVG map widget. No tile server: markers are projected
 * onto a plain coordinate frame (equirectangular over the view box), so
 * the map works offline and inside any DOM implementation.
 */

import type { LonLat } from "./types.js";

export interface MapView {
  minLon: number;
  minLat: number;
  maxLon: number;
  maxLat: number;
}

/** Default frame: the city extent the dataset lives in. */
export const PALEMBANG_VIEW: MapView = {
  minLon: 104.6,
  minLat: -3.1,
  maxLon: 104.9,
  maxLat: -2.85,
};

export interface MapMarker {
  id: string;
  lon: number;
  lat: number;
  title: string;
  category?: string;
  selected?: boolean;
}

export interface MapOptions {
  markers: MapMarker[];
  boundaries?: LonLat[][];
  view?: MapView;
  width?: number;
  height?: number;
  onMarkerClick?: (id: string) => void;
  onMapClick?: (lon: number, lat: number) => void;
}

export function project(
  view: MapView,
  width: number,
  height: number,
  lon: number,
  lat: number,
): [number, number] {
  const x = ((lon - view.minLon) / (view.maxLon - view.minLon)) * width;
  const y = ((view.maxLat - lat) / (view.maxLat - view.minLat)) * height;
  return [x, y];
}

export function unproject(
  view: MapView,
  width: number,
  height: number,
  x: number,
  y: number,
): LonLat {
  const lon = view.minLon + (x / width) * (view.maxLon - view.minLon);
  const lat = view.maxLat - (y / height) * (view.maxLat - view.minLat);
  return [lon, lat];
}

/** Smallest view containing every marker, padded; fallback when empty. */
export function fitView(markers: MapMarker[], fallback: MapView = PALEMBANG_VIEW): MapView {
  if (markers.length === 0) return fallback;
  let minLon = Infinity;
  let minLat = Infinity;
  let maxLon = -Infinity;
  let maxLat = -Infinity;
  for (const m of markers) {
    minLon = Math.min(minLon, m.lon);
    minLat = Math.min(minLat, m.lat);
    maxLon = Math.max(maxLon, m.lon);
    maxLat = Math.max(maxLat, m.lat);
  }
  // degenerate extents (single marker) still need a visible frame
  const padLon = Math.max((maxLon - minLon) * 0.15, 0.01);
  const padLat = Math.max((maxLat - minLat) * 0.15, 0.01);
  return {
    minLon: minLon - padLon,
    minLat: minLat - padLat,
    maxLon: maxLon + padLon,
    maxLat: maxLat + padLat,
  };
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

/** Build the widget. The caller appends the returned <svg> somewhere. */
export function renderMap(doc: Document, opts: MapOptions): SVGSVGElement {
  const width = opts.width ?? 640;
  const height = opts.height ?? 480;
  const view = opts.view ?? fitView(opts.markers);

  const svg = svgEl(doc, "svg", {
    class: "space-map",
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });

  svg.appendChild(
    svgEl(doc, "rect", {
      class: "map-backdrop",
      x: "0",
      y: "0",
      width: String(width),
      height: String(height),
    }),
  );
  for (let i = 1; i < 6; i++) {
    svg.appendChild(
      svgEl(doc, "line", {
        class: "map-grid",
        x1: String((width / 6) * i),
        y1: "0",
        x2: String((width / 6) * i),
        y2: String(height),
      }),
    );
    svg.appendChild(
      svgEl(doc, "line", {
        class: "map-grid",
        x1: "0",
        y1: String((height / 6) * i),
        x2: String(width),
        y2: String((height / 6) * i),
      }),
    );
  }

  for (const ring of opts.boundaries ?? []) {
    const points = ring
      .map(([lon, lat]) => project(view, width, height, lon, lat).join(","))
      .join(" ");
    svg.appendChild(svgEl(doc, "polygon", { class: "space-boundary", points }));
  }

  for (const marker of opts.markers) {
    const [x, y] = project(view, width, height, marker.lon, marker.lat);
    const classes = ["marker"];
    if (marker.category) classes.push(`cat-${marker.category}`);
    if (marker.selected) classes.push("selected");
    const dot = svgEl(doc, "circle", {
      class: classes.join(" "),
      cx: String(x),
      cy: String(y),
      r: marker.selected ? "9" : "6",
      "data-id": marker.id,
    });
    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent = marker.title;
    dot.appendChild(title);
    svg.appendChild(dot);
  }

  svg.addEventListener("click", (ev) => {
    const target = ev.target as Element | null;
    const markerId = target?.getAttribute?.("data-id");
    if (markerId) {
      opts.onMarkerClick?.(markerId);
      return;
    }
    if (!opts.onMapClick) return;
    const mouse = ev as MouseEvent;
    const rect = svg.getBoundingClientRect();
    // headless DOMs report a zero-size rect; fall back to nominal size
    const scaleX = rect.width > 0 ? width / rect.width : 1;
    const scaleY = rect.height > 0 ? height / rect.height : 1;
    const x = (mouse.clientX - rect.left) * scaleX;
    const y = (mouse.clientY - rect.top) * scaleY;
    const [lon, lat] = unproject(view, width, height, x, y);
    opts.onMapClick(lon, lat);
  });

  return svg;
}
