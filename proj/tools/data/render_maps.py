"""Renders the bundled map images from the bundled networks and scenarios.

Outputs data/maps/{nyc-subway,nyc-bus,dc-metro}.png and the scenario images
under data/images/. Output is deterministic for a given Pillow version.
"""

import json
import math
import pathlib

from PIL import Image, ImageDraw, ImageFont

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = ROOT / "data"

FONT_PATH = "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf"

COLORS = {
    "1": "#EE352E", "2": "#EE352E", "3": "#EE352E",
    "A": "#0039A6", "C": "#0039A6", "E": "#0039A6",
    "B": "#FF6319", "D": "#FF6319", "F": "#FF6319", "M": "#FF6319",
    "N": "#FCCC0A", "Q": "#FCCC0A", "R": "#FCCC0A", "W": "#FCCC0A",
    "4": "#00933C", "5": "#00933C", "6": "#00933C",
    "7": "#B933AD", "<7>": "#B933AD",
    "S": "#808183", "L": "#A7A9AC",
    "Red": "#BF0D3E", "Green": "#00B140", "Yellow": "#FFD100", "Orange": "#ED8B00",
}
BUS_COLOR = "#0078C6"


def font(size):
    try:
        return ImageFont.truetype(FONT_PATH, size)
    except OSError:
        return ImageFont.load_default()


class Projection:
    def __init__(self, points, width, margin=60):
        lats = [p[0] for p in points]
        lons = [p[1] for p in points]
        self.lat0, self.lat1 = min(lats), max(lats)
        self.lon0, self.lon1 = min(lons), max(lons)
        self.k = math.cos(math.radians((self.lat0 + self.lat1) / 2))
        span_x = (self.lon1 - self.lon0) * self.k
        span_y = self.lat1 - self.lat0
        self.scale = (width - 2 * margin) / span_x
        self.margin = margin
        self.width = width
        self.height = int(span_y * self.scale + 2 * margin)

    def __call__(self, lat, lon):
        x = self.margin + (lon - self.lon0) * self.k * self.scale
        y = self.margin + (self.lat1 - lat) * self.scale
        return x, y


def load(name):
    return json.loads((DATA / "networks" / f"{name}.json").read_text(encoding="utf-8"))


def draw_network(net, modes, width, title, label_modes=None, faint_modes=()):
    label_modes = label_modes or modes
    pos = {s["id"]: (s["lat"], s["lon"]) for s in net["stations"]}
    used = {sid for l in net["lines"] if l["mode"] in modes or l["mode"] in faint_modes for sid in l["stops"]}
    proj = Projection([pos[s] for s in used], width)
    img = Image.new("RGB", (proj.width, proj.height), "white")
    d = ImageDraw.Draw(img)
    small = font(11)

    def line_color(l):
        return BUS_COLOR if l["mode"] == "bus" else COLORS.get(l["label"], "#444444")

    for l in net["lines"]:
        if l["mode"] in faint_modes:
            pts = [proj(*pos[s]) for s in l["stops"]]
            d.line(pts, fill="#DDDDDD", width=3)
    # parallel lines sharing a corridor are offset so each stays visible
    corridor = {}
    for l in net["lines"]:
        if l["mode"] not in modes:
            continue
        key = tuple(sorted({l["stops"][0], l["stops"][-1]}))
        idx = corridor.setdefault(key, 0)
        corridor[key] += 1
        off = (idx % 4) * 3 - 4
        pts = [(x + off, y + off) for x, y in (proj(*pos[s]) for s in l["stops"])]
        d.line(pts, fill=line_color(l), width=4)

    labelled = {sid: [] for sid in used}
    for l in net["lines"]:
        if l["mode"] in label_modes:
            for s in l["stops"]:
                if l["label"] not in labelled[s]:
                    labelled[s].append(l["label"])
    names = {s["id"]: s["name"] for s in net["stations"]}
    for sid in sorted(used):
        if not labelled[sid]:
            continue
        x, y = proj(*pos[sid])
        d.ellipse([x - 4, y - 4, x + 4, y + 4], fill="white", outline="black")
        d.text((x + 7, y - 6), f"{names[sid]} ({' '.join(labelled[sid])})", fill="black", font=small)

    d.text((20, 15), title, fill="black", font=font(20))
    return img, proj, d


def draw_bikes(img, proj, d, bikes, user):
    for b in bikes:
        x, y = proj(b["lat"], b["lon"])
        n = b["bikes"]
        color = "#D73027" if n == 0 else "#FC8D59" if n < 4 else "#91CF60" if n < 10 else "#1A9850"
        r = 9
        d.ellipse([x - r, y - r, x + r, y + r], fill=color, outline="black")
        d.text((x - 6, y - 7), str(n), fill="black", font=font(11))
    if user:
        x, y = proj(*user)
        d.ellipse([x - 22, y - 22, x + 22, y + 22], outline="black", width=5)
        d.text((x - 40, y + 26), "my location", fill="black", font=font(14))


def draw_legend(img, title):
    d = ImageDraw.Draw(img)
    d.text((10, 10), title, fill="black", font=font(18))
    legend = [("#D73027", "0 bikes"), ("#FC8D59", "1-3"), ("#91CF60", "4-9"), ("#1A9850", "10+")]
    for i, (c, t) in enumerate(legend):
        y = 50 + i * 20
        d.ellipse([20, y, 34, y + 14], fill=c, outline="black")
        d.text((40, y), t, fill="black", font=font(12))


def crop_box(img, proj, lat0, lon0, lat1, lon1):
    x0, y0 = proj(lat1, lon0)
    x1, y1 = proj(lat0, lon1)
    return img.crop((int(x0), int(y0), int(x1), int(y1)))


def scenario(sid):
    return json.loads((DATA / "scenarios" / f"{sid}.json").read_text(encoding="utf-8"))


def main():
    (DATA / "maps").mkdir(parents=True, exist_ok=True)
    (DATA / "images").mkdir(parents=True, exist_ok=True)
    nyc = load("nyc")
    dc = load("dc")

    subway, proj, d = draw_network(nyc, {"subway"}, 1100, "NYC subway (desk-scale subset)")
    subway.save(DATA / "maps" / "nyc-subway.png", optimize=True)

    bus, _, _ = draw_network(nyc, {"bus"}, 1100, "Manhattan bus routes", faint_modes={"subway"})
    bus.save(DATA / "maps" / "nyc-bus.png", optimize=True)

    metro, _, _ = draw_network(dc, {"subway", "bus"}, 1000, "Washington DC Metro (desk-scale subset)")
    metro.save(DATA / "maps" / "dc-metro.png", optimize=True)

    danger = subway.copy()
    dd = ImageDraw.Draw(danger, "RGBA")
    z = scenario("S5")["disruption"]["danger_zones"][0]
    x0, y0 = proj(z["max_lat"], z["min_lon"])
    x1, y1 = proj(z["min_lat"], z["max_lon"])
    dd.rectangle([x0, y0, x1, y1], fill=(0, 0, 0, 150), outline="black", width=3)
    danger.save(DATA / "images" / "s5-danger-zone.png", optimize=True)

    bikes = nyc["bike_stations"]
    cathedral = next(s for s in nyc["stations"] if s["id"] == "m4_bway_110")
    user = (cathedral["lat"], cathedral["lon"])
    uptown, uproj, ud = draw_network(nyc, {"subway"}, 2200, "")
    draw_bikes(uptown, uproj, ud, [b for b in bikes if b["lat"] > 40.77], user)
    uptown = crop_box(uptown, uproj, 40.772, -73.990, 40.812, -73.940)
    draw_legend(uptown, "Bike stations: Central Park")
    uptown.save(DATA / "images" / "s6-bikes-uptown.png", optimize=True)

    midtown, mproj, md = draw_network(nyc, {"subway"}, 2200, "")
    draw_bikes(midtown, mproj, md, [b for b in bikes if b["lat"] <= 40.77], None)
    midtown = crop_box(midtown, mproj, 40.748, -73.998, 40.772, -73.965)
    draw_legend(midtown, "Bike stations: Midtown")
    midtown.save(DATA / "images" / "s6-bikes-midtown.png", optimize=True)

    for p in sorted((DATA / "maps").glob("*.png")) + sorted((DATA / "images").glob("*.png")):
        print(p.relative_to(ROOT), p.stat().st_size)


if __name__ == "__main__":
    main()
