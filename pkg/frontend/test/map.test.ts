import { describe, expect, it } from "vitest";

import {
  type MapMarker,
  type MapView,
  PALEMBANG_VIEW,
  fitView,
  project,
  renderMap,
  unproject,
} from "../src/map.js";
import { dom } from "./helpers.js";

const W = 640;
const H = 480;

describe("projection", () => {
  it("is inverted exactly by unproject", () => {
    const view: MapView = PALEMBANG_VIEW;
    const points: [number, number][] = [
      [104.6, -3.1],
      [104.9, -2.85],
      [104.7512, -2.9741],
      [104.75, -2.975],
    ];
    for (const [lon, lat] of points) {
      const [x, y] = project(view, W, H, lon, lat);
      const [lon2, lat2] = unproject(view, W, H, x, y);
      expect(lon2).toBeCloseTo(lon, 9);
      expect(lat2).toBeCloseTo(lat, 9);
    }
  });

  it("puts north at the top", () => {
    const [, yNorth] = project(PALEMBANG_VIEW, W, H, 104.75, -2.86);
    const [, ySouth] = project(PALEMBANG_VIEW, W, H, 104.75, -3.09);
    expect(yNorth).toBeLessThan(ySouth);
  });
});

function markerAt(id: string, lon: number, lat: number, extra: Partial<MapMarker> = {}): MapMarker {
  return { id, lon, lat, title: `Taman ${id.toUpperCase()}`, ...extra };
}

describe("fitView", () => {
  it("falls back to the city view when there is nothing to fit", () => {
    expect(fitView([])).toEqual(PALEMBANG_VIEW);
  });

  it("contains every input marker with padding", () => {
    const markers = [
      markerAt("a", 104.71, -2.95),
      markerAt("b", 104.83, -2.91),
      markerAt("c", 104.76, -2.99),
    ];
    const view = fitView(markers);
    for (const m of markers) {
      expect(m.lon).toBeGreaterThan(view.minLon);
      expect(m.lon).toBeLessThan(view.maxLon);
      expect(m.lat).toBeGreaterThan(view.minLat);
      expect(m.lat).toBeLessThan(view.maxLat);
    }
  });

  it("gives a single marker a non-degenerate frame", () => {
    const view = fitView([markerAt("solo", 104.75, -2.97)]);
    expect(view.maxLon - view.minLon).toBeGreaterThan(0);
    expect(view.maxLat - view.minLat).toBeGreaterThan(0);
  });
});

describe("renderMap", () => {
  const markers = [
    markerAt("a", 104.71, -2.95, { category: "taman_kota" }),
    markerAt("b", 104.83, -2.91, { category: "taman_wisata_alam" }),
    markerAt("c", 104.76, -2.99, { category: "taman_kota", selected: true }),
  ];

  it("draws one circle per marker with category and selection classes", () => {
    const { doc } = dom();
    const svg = renderMap(doc, { markers });
    const circles = Array.from(svg.querySelectorAll("circle.marker"));
    expect(circles).toHaveLength(3);
    const byId = new Map(circles.map((c) => [c.getAttribute("data-id"), c]));
    expect(byId.get("b")!.classList.contains("cat-taman_wisata_alam")).toBe(true);
    expect(byId.get("c")!.classList.contains("selected")).toBe(true);
    expect(byId.get("a")!.querySelector("title")!.textContent).toBe("Taman A");
  });

  it("draws boundary polygons", () => {
    const { doc } = dom();
    const ring: [number, number][] = [
      [104.74, -2.985],
      [104.75, -2.985],
      [104.75, -2.978],
      [104.74, -2.978],
    ];
    const svg = renderMap(doc, { markers, boundaries: [ring] });
    const polys = svg.querySelectorAll("polygon.space-boundary");
    expect(polys).toHaveLength(1);
    const pointPairs = polys[0].getAttribute("points")!.split(" ");
    expect(pointPairs).toHaveLength(4);
  });

  it("reports marker clicks by id", () => {
    const { doc, window } = dom();
    const clicked: string[] = [];
    const svg = renderMap(doc, { markers, onMarkerClick: (id) => clicked.push(id) });
    doc.body.appendChild(svg);
    const circle = svg.querySelector('circle[data-id="b"]')!;
    circle.dispatchEvent(new window.MouseEvent("click", { bubbles: true }));
    expect(clicked).toEqual(["b"]);
  });

  it("converts background clicks to coordinates", () => {
    const { doc, window } = dom();
    const picks: [number, number][] = [];
    const view = PALEMBANG_VIEW;
    const svg = renderMap(doc, {
      markers: [],
      view,
      onMapClick: (lon, lat) => picks.push([lon, lat]),
    });
    doc.body.appendChild(svg);
    // JSDOM reports a zero-size bounding rect, so client coordinates pass
    // straight through as SVG pixels.
    const [x, y] = project(view, W, H, 104.77, -2.93);
    svg.dispatchEvent(
      new window.MouseEvent("click", { bubbles: true, clientX: x, clientY: y }),
    );
    expect(picks).toHaveLength(1);
    expect(picks[0][0]).toBeCloseTo(104.77, 6);
    expect(picks[0][1]).toBeCloseTo(-2.93, 6);
  });

  it("does not treat marker clicks as background picks", () => {
    const { doc, window } = dom();
    const picks: unknown[] = [];
    const clicked: string[] = [];
    const svg = renderMap(doc, {
      markers,
      onMarkerClick: (id) => clicked.push(id),
      onMapClick: (lon, lat) => picks.push([lon, lat]),
    });
    doc.body.appendChild(svg);
    svg
      .querySelector('circle[data-id="a"]')!
      .dispatchEvent(new window.MouseEvent("click", { bubbles: true }));
    expect(clicked).toEqual(["a"]);
    expect(picks).toHaveLength(0);
  });
});
