"""Writes the bundled scenario files (data/scenarios/S1.json .. S9.json)."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2]
OUT = ROOT / "data" / "scenarios"

NYC = "../networks/nyc.json"
DC = "../networks/dc.json"
SUBWAY_MAP = {"path": "../maps/nyc-subway.png", "caption": "NYC subway map"}
BUS_MAP = {"path": "../maps/nyc-bus.png", "caption": "Manhattan bus map"}
DC_MAP = {"path": "../maps/dc-metro.png", "caption": "Washington DC Metro map"}

S1_LINES = ["1", "2", "3", "A", "B", "C", "D"]
S5_ZONE = {"min_lat": 40.7490, "min_lon": -73.9950, "max_lat": 40.7600, "max_lon": -73.9750}
S8_ZONE = {"min_lat": 40.7535, "min_lon": -73.9905, "max_lat": 40.7590, "max_lon": -73.9840}
S9_ZONE = {"min_lat": 38.8955, "min_lon": -77.0250, "max_lat": 38.9010, "max_lon": -77.0185}

SCENARIOS = [
    {
        "id": "S1",
        "title": "North-south subway trip, flooded west side",
        "take_home": "Can the model reason about where lines and stations lie in general?",
        "notes": "Lines 1, 2, 3, A, B, C and D are disabled. The flood has no zone of its own.",
        "network": NYC,
        "origin": "WTC",
        "destination": "Cathedral Parkway",
        "disruption": {"disabled_lines": S1_LINES},
        "query": "I finished my work at WTC and headed home at Cathedral Parkway. West Manhattan is flooded and "
                 "1/2/3/A/B/C/D are not in operation so I want to take alternative paths.",
        "maps": [SUBWAY_MAP],
    },
    {
        "id": "S2",
        "title": "Cross-river subway trip",
        "take_home": "Can the model respect physical constraints such as river crossings?",
        "notes": "Times Square is encoded as the Times Sq-42 St station.",
        "network": NYC,
        "origin": "Cathedral Parkway",
        "destination": "Flushing-Main St",
        "disruption": {"avoided_stations": ["Times Sq-42 St"]},
        "query": "I'm currently at Cathedral Parkway and heading to Flushing-Main St. What paths should I take based "
                 "on the NYC subway map? By the way, I want to avoid Times Square.",
        "maps": [SUBWAY_MAP],
    },
    {
        "id": "S3",
        "title": "Cross-town subway trip, regular route blocked",
        "take_home": "Can the model see that an incident blocks the usual route?",
        "notes": "The attacked intersection is encoded as the whole Times Sq-42 St station, which the 7 and the "
                 "1/2/3 share.",
        "network": NYC,
        "origin": "Grand Central-42 St",
        "destination": "Cathedral Parkway",
        "disruption": {"avoided_stations": ["Times Sq-42 St"]},
        "query": "I'm currently on 7 local train at Grand Central-42 St. I want to go to Cathedral Parkway. I heard "
                 "that an attack happens at the intersection of 7 local train and 1/2/3 local trains at Times Square "
                 "42 St. How can I go based on NYC subway map?",
        "maps": [SUBWAY_MAP],
    },
    {
        "id": "S4",
        "title": "Cross-town subway trip, regular route still open",
        "take_home": "Can the model see that an incident leaves the usual route open?",
        "notes": "The attacked intersection is encoded as the whole 42 St-Port Authority Bus Terminal station. "
                 "Times Sq-42 St stays open, so the 7 to Times Square and the 1 uptown remain usable.",
        "network": NYC,
        "origin": "Grand Central-42 St",
        "destination": "Cathedral Parkway",
        "disruption": {"avoided_stations": ["42 St-Port Authority Bus Terminal"]},
        "query": "I'm currently on 7 local train at Grand Central-42 St, heading towards Times Square. I want to go "
                 "to Cathedral Parkway. I heard that an attack happens at the intersection of 7 local train and "
                 "A/C/E local trains at 42 St. How can I go based on NYC subway map?",
        "maps": [SUBWAY_MAP],
    },
    {
        "id": "S5",
        "title": "Dangerous area marked on an image",
        "take_home": "Can the model read a marking drawn on an image and route around it?",
        "notes": "The dark rectangle is a lat/lon box over midtown from 34 St to about 50 St, between 8 Av and "
                 "Park Av. The same box is drawn in the attached image.",
        "network": NYC,
        "origin": "Cathedral Parkway",
        "destination": "Flushing-Main St",
        "disruption": {"danger_zones": [S5_ZONE]},
        "query": "The area under the dark rectangular is marked as a dangerous zone and should be avoided. I'm "
                 "currently at Cathedral Parkway and heading to Flushing-Main St. What paths should I take based on "
                 "the NYC subway map?",
        "maps": [SUBWAY_MAP],
        "attachments": [{"path": "../images/s5-danger-zone.png",
                         "caption": "Subway map with the dangerous zone marked by a dark rectangle"}],
    },
    {
        "id": "S6",
        "title": "Subway, bus and bike share",
        "take_home": "Can the model use an unfamiliar service that is only described by images?",
        "notes": "The black circle is at Cathedral Pkwy and Broadway, next to the Cathedral Parkway (110 St) "
                 "station. The bike stations and their counts are bundled data made up for this scenario. Riding "
                 "near Times Square is encoded as avoiding the Times Sq-42 St station.",
        "network": NYC,
        "origin": "Cathedral Parkway",
        "destination": "42 St-Port Authority Bus Terminal",
        "disruption": {"avoided_stations": ["Times Sq-42 St"]},
        "query": "I'm in the black circle area marked as my location, trying to go to 42nd street-port to take bus "
                 "to Jersey. I would like to use bike for sight viewing in Central Park. However, I heard that it is "
                 "busy around Times Square, so I want to avoid riding bike there. Bus or subway is preferred. "
                 "Provided two images are citi bike station locations, with color means the amount of bikes "
                 "available.",
        "maps": [SUBWAY_MAP],
        "attachments": [
            {"path": "../images/s6-bikes-uptown.png",
             "caption": "Bike stations around Central Park; the black circle is my location"},
            {"path": "../images/s6-bikes-midtown.png", "caption": "Bike stations in midtown"},
        ],
    },
    {
        "id": "S7",
        "title": "Subway and bus",
        "take_home": "Does adding a bus map change the recommended route?",
        "notes": "Same disruption as S1. The bus map is a knowledge-base image, so it is dropped without maps.",
        "network": NYC,
        "origin": "WTC",
        "destination": "Cathedral Parkway",
        "disruption": {"disabled_lines": S1_LINES},
        "query": "I finished my work at WTC and headed home on Cathedral Parkway. West Manhattan is flooded and "
                 "1/2/3/A/B/C/D are not in operation so I want to take alternative paths. Access Manhattan Bus Map "
                 "to find a path that uses bus services.",
        "maps": [SUBWAY_MAP, BUS_MAP],
    },
    {
        "id": "S8",
        "title": "Quantitative constraint",
        "take_home": "Can the model optimise for a stated quantity?",
        "notes": "The Times Square area is a box covering Times Sq-42 St, 42 St-Port Authority Bus Terminal and "
                 "42 St-Bryant Pk. The oracle minimises the number of stations visited.",
        "network": NYC,
        "origin": "Cathedral Parkway",
        "destination": "Flushing-Main St",
        "disruption": {"danger_zones": [S8_ZONE]},
        "objective": "min-stops",
        "query": "I'm currently at Cathedral Parkway and heading to Flushing-Main St. What paths should I take based "
                 "on the NYC subway map? By the way, I want to avoid 42nd street the entire Times Square area. With "
                 "the constraint: Take express if possible(choose route with min stops)",
        "maps": [SUBWAY_MAP],
    },
    {
        "id": "S9",
        "title": "Washington DC Metro",
        "take_home": "Does the model do as well outside New York?",
        "notes": "The area around Gallery Place is a box that holds only the Gallery Place station.",
        "network": DC,
        "origin": "Shady Grove",
        "destination": "Greenbelt",
        "disruption": {"danger_zones": [S9_ZONE]},
        "query": "I'm currently at Shady Grove, and would like to go to Greenbelt. Area around Gallery Place is "
                 "dangerous. How can I get there?",
        "maps": [DC_MAP],
    },
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for s in SCENARIOS:
        path = OUT / f"{s['id']}.json"
        path.write_text(json.dumps(s, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(SCENARIOS)} scenarios to {OUT}")


if __name__ == "__main__":
    main()
