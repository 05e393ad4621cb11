/**
 * Shapes exchanged with the green-space API.
 *
 * The list/detail payloads are GeoJSON: a feature's geometry is either a
 * bare Point (the marker) or a GeometryCollection of exactly
 * [Point, Polygon] when the record also carries a boundary ring.
 */

export type Category = "taman_kota" | "taman_wisata_alam";

export const CATEGORY_LABELS: Record<Category, string> = {
  taman_kota: "Taman Kota",
  taman_wisata_alam: "Taman Wisata Alam",
};

export type LonLat = [number, number];

export interface PointGeometry {
  type: "Point";
  coordinates: LonLat;
}

export interface PolygonGeometry {
  type: "Polygon";
  coordinates: LonLat[][];
}

export interface GeometryCollection {
  type: "GeometryCollection";
  geometries: [PointGeometry, PolygonGeometry];
}

export type SpaceGeometry = PointGeometry | GeometryCollection;

export interface SpaceProperties {
  id: string;
  name: string;
  category: Category;
  description: string;
  facilities: string[];
  photos: string[];
  created_at: string;
  updated_at: string;
}

export interface SpaceFeature {
  type: "Feature";
  geometry: SpaceGeometry;
  properties: SpaceProperties;
}

export interface SpaceCollection {
  type: "FeatureCollection";
  features: SpaceFeature[];
}

export interface NearestHit {
  id: string;
  name: string;
  category: Category;
  distance_m: number;
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
  details?: string[];
}

/** Body sent on create; PUT patches send any subset of these fields. */
export interface SpaceDraftBody {
  name?: string;
  category?: Category;
  marker?: LonLat;
  boundary?: LonLat[] | null;
  description?: string;
  facilities?: string[];
  photos?: string[];
}

/** The marker position of a feature regardless of geometry shape. */
export function markerOf(feature: SpaceFeature): LonLat {
  const geometry = feature.geometry;
  if (geometry.type === "Point") return geometry.coordinates;
  return geometry.geometries[0].coordinates;
}

/** The boundary ring, if the feature has one. */
export function boundaryOf(feature: SpaceFeature): LonLat[] | null {
  const geometry = feature.geometry;
  if (geometry.type === "GeometryCollection") {
    return geometry.geometries[1].coordinates[0];
  }
  return null;
}
