"""Default dataset: the city's documented green-space inventory.

Marker coordinates are fixture values inside the Palembang bounding box
(lon 104.60..104.90, lat -3.10..-2.85), not surveyed positions. "Pundi
Kayu" keeps the source inventory's spelling even though the park is more
commonly written "Punti Kayu".
"""

from .geo import GeoPoint, GeoPolygon
from .models import Category, SpaceDraft

PALEMBANG_BBOX = (104.60, -3.10, 104.90, -2.85)

_CITY_PARKS = [
    (
        "Taman Gelora Sriwijaya",
        (104.7872, -2.9794),
        "Taman di kawasan kompleks olahraga Jakabaring.",
        ("jogging track", "lapangan olahraga", "area bermain"),
    ),
    (
        "Taman Dekranasda",
        (104.7431, -2.9821),
        "Taman kota di dekat gedung Dekranasda.",
        ("bangku taman", "area hijau"),
    ),
    (
        "Taman Kampung Kapiten",
        (104.7637, -2.9887),
        "Ruang terbuka di kawasan bersejarah Kampung Kapitan, tepi Sungai Musi.",
        ("plaza", "dermaga"),
    ),
    (
        "Taman Benteng Kuto Besak",
        (104.7599, -2.9891),
        "Pelataran hijau di depan Benteng Kuto Besak menghadap Sungai Musi.",
        ("plaza", "kuliner malam", "panggung terbuka"),
    ),
    (
        "Taman Monpera",
        (104.7612, -2.9886),
        "Taman di sekitar Monumen Perjuangan Rakyat.",
        ("monumen", "bangku taman"),
    ),
    (
        "Taman Bawah Jembatan Ampera",
        (104.7632, -2.9918),
        "Ruang publik di bawah Jembatan Ampera di tepi Sungai Musi.",
        ("plaza", "area duduk"),
    ),
    (
        "Taman Masjid Agung",
        (104.7595, -2.9869),
        "Taman di sekeliling Masjid Agung Sultan Mahmud Badaruddin.",
        ("air mancur", "area hijau"),
    ),
    (
        "Taman Kambang Iwak",
        (104.7478, -2.9812),
        "Taman kolam retensi Kambang Iwak dengan jalur lari mengelilingi danau.",
        ("jogging track", "danau", "area bermain", "kuliner"),
    ),
    (
        "Taman Masjid Taqwa",
        (104.7522, -2.9770),
        "Taman di sekitar kawasan Masjid Taqwa.",
        ("area hijau",),
    ),
    (
        "Taman POM IX",
        (104.7448, -2.9766),
        "Taman kota di kawasan POM IX dekat Palembang Square.",
        ("jogging track", "area bermain"),
    ),
]

_NATURE_PARKS = [
    (
        "Taman Wisata Alam Pundi Kayu",
        (104.7242, -2.9327),
        "Hutan wisata pinus di dalam kota dengan koleksi flora dan fauna.",
        ("hutan pinus", "area piknik", "wahana keluarga"),
    ),
    (
        "Taman Wisata Alam Pulau Kemaro",
        (104.8236, -2.9591),
        "Pulau delta di tengah Sungai Musi dengan pagoda dan area hijau.",
        ("pagoda", "dermaga", "area piknik"),
    ),
]

# Small rectangular boundaries for the two parks with a meaningful extent.
_BOUNDARIES = {
    "Taman Kambang Iwak": [
        (104.7460, -2.9825),
        (104.7495, -2.9825),
        (104.7495, -2.9798),
        (104.7460, -2.9798),
        (104.7460, -2.9825),
    ],
    "Taman Wisata Alam Pundi Kayu": [
        (104.7195, -2.9375),
        (104.7290, -2.9375),
        (104.7290, -2.9280),
        (104.7195, -2.9280),
        (104.7195, -2.9375),
    ],
}


def _draft(name, lonlat, description, facilities, category) -> SpaceDraft:
    ring = _BOUNDARIES.get(name)
    return SpaceDraft(
        name=name,
        category=category,
        marker=GeoPoint(*lonlat),
        boundary=GeoPolygon.from_coords(ring) if ring else None,
        description=description,
        facilities=tuple(facilities),
    )


SEED_DRAFTS: tuple[SpaceDraft, ...] = tuple(
    [_draft(*row, Category.CITY_PARK) for row in _CITY_PARKS]
    + [_draft(*row, Category.NATURE_TOURISM_PARK) for row in _NATURE_PARKS]
)
