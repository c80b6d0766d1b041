"""Writes the bundled desk-scale networks (data/networks/nyc.json, dc.json).

Coordinates are approximate station locations. Hop times are derived from
straight-line distance: subway at 9 m/s plus 25 s dwell, bus at 3.5 m/s plus
30 s dwell, rounded to whole seconds.
"""

import json
import math
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2]
OUT = ROOT / "data" / "networks"

R = 6371008.8


def haversine(a, b):
    p1, p2 = math.radians(a[0]), math.radians(b[0])
    dp = p2 - p1
    dl = math.radians(b[1] - a[1])
    h = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * R * math.asin(math.sqrt(h))


def hop_seconds(a, b, mode):
    d = haversine(a, b)
    if mode == "bus":
        return round(d / 3.5 + 30)
    return round(d / 9.0 + 25)


def build(stations, lines, bike_stations=()):
    pos = {s[0]: (s[3], s[4]) for s in stations}
    doc = {
        "stations": [
            {"id": sid, "name": name, "aliases": list(aliases), "lat": lat, "lon": lon}
            for sid, name, aliases, lat, lon in stations
        ],
        "lines": [],
        "bike_stations": [
            {"id": bid, "lat": lat, "lon": lon, "bikes": n} for bid, lat, lon, n in bike_stations
        ],
        "walk_link_threshold_m": 1000,
        "walking_speed_mps": 1.25,
    }
    for lid, label, mode, stops in lines:
        for s in stops:
            assert s in pos, (lid, s)
        hops = [hop_seconds(pos[a], pos[b], mode) for a, b in zip(stops, stops[1:])]
        doc["lines"].append(
            {"id": lid, "label": label, "mode": mode, "stops": stops, "hop_times_s": hops, "bidirectional": True}
        )
    return doc


NYC_STATIONS = [
    # Lower Manhattan
    ("wtc_cortlandt", "WTC Cortlandt", ["WTC"], 40.711835, -74.012188),
    ("world_trade_center", "World Trade Center", [], 40.712582, -74.009781),
    ("cortlandt_rw", "Cortlandt St", [], 40.710668, -74.011029),
    ("fulton", "Fulton St", [], 40.710368, -74.009509),
    ("chambers_123", "Chambers St (1/2/3)", [], 40.715478, -74.009266),
    ("chambers_ac", "Chambers St (A/C)", [], 40.714111, -74.008585),
    ("brooklyn_bridge", "Brooklyn Bridge-City Hall", [], 40.713065, -74.004131),
    # 14 St
    ("14st_123", "14 St (1/2/3)", [], 40.737826, -74.000201),
    ("14st_ace", "14 St (A/C/E)", [], 40.740893, -74.00169),
    ("8av_l", "8 Av", [], 40.739777, -74.002578),
    ("6av_l", "6 Av", [], 40.737335, -73.996786),
    ("union_sq", "14 St-Union Sq", ["Union Square"], 40.734673, -73.989951),
    ("3av_l", "3 Av", [], 40.732849, -73.986122),
    ("1av_l", "1 Av", [], 40.730953, -73.981628),
    ("23st_6", "23 St (6)", [], 40.739864, -73.986599),
    ("33st_6", "33 St (6)", [], 40.746081, -73.982076),
    # Midtown
    ("34st_penn_123", "34 St-Penn Station (1/2/3)", [], 40.750373, -73.991057),
    ("34st_penn_ace", "34 St-Penn Station (A/C/E)", [], 40.752287, -73.993391),
    ("herald_sq", "34 St-Herald Sq", [], 40.749567, -73.98795),
    ("34st_hudson_yards", "34 St-Hudson Yards", [], 40.755882, -74.00191),
    ("times_sq", "Times Sq-42 St", ["Times Square", "Times Sq", "Times Square-42 St", "Times Square 42 St"],
     40.75529, -73.987495),
    ("port_authority", "42 St-Port Authority Bus Terminal",
     ["42 St-Port Authority", "Port Authority", "42nd Street-Port Authority", "42nd street-port"],
     40.757308, -73.989735),
    ("bryant_pk", "42 St-Bryant Pk", [], 40.754222, -73.984569),
    ("5av_bryant", "5 Av-Bryant Pk", ["5 Av"], 40.753821, -73.981963),
    ("grand_central", "Grand Central-42 St", ["Grand Central", "Grand Central Terminal"], 40.751776, -73.976848),
    ("47_50_rock", "47-50 Sts-Rockefeller Ctr", [], 40.758663, -73.981329),
    ("49st", "49 St", [], 40.759901, -73.984139),
    ("50st_ce", "50 St (C/E)", [], 40.762456, -73.985984),
    ("51st", "51 St", [], 40.757107, -73.97192),
    ("7av_53", "7 Av (B/D/E)", [], 40.762862, -73.981637),
    ("5av_53", "5 Av/53 St", [], 40.760167, -73.975224),
    ("lex_53", "Lexington Av/53 St", [], 40.757552, -73.969055),
    ("57st_7av", "57 St-7 Av", [], 40.764664, -73.980658),
    ("57st_f", "57 St (F)", [], 40.763972, -73.97745),
    ("5av_59", "5 Av/59 St", [], 40.764811, -73.973347),
    ("lex_59", "Lexington Av/59 St", ["59 St (4/5/6)"], 40.762526, -73.967967),
    ("lex_63", "Lexington Av/63 St", [], 40.764629, -73.966113),
    ("columbus_circle", "59 St-Columbus Circle", ["Columbus Circle"], 40.768247, -73.981929),
    # Upper West Side
    ("66st", "66 St-Lincoln Center", [], 40.77344, -73.982209),
    ("72st_123", "72 St (1/2/3)", [], 40.778453, -73.98197),
    ("79st", "79 St", [], 40.783934, -73.979917),
    ("86st_1", "86 St (1)", [], 40.788644, -73.976218),
    ("96st_123", "96 St (1/2/3)", [], 40.793919, -73.972323),
    ("103st_1", "103 St (1)", [], 40.799446, -73.968379),
    ("cathedral_pkwy", "Cathedral Parkway (110 St)", ["Cathedral Parkway", "Cathedral Pkwy", "110 St-Cathedral Parkway"],
     40.803967, -73.966847),
    ("116st_columbia", "116 St-Columbia University", [], 40.807722, -73.96411),
    ("72st_bc", "72 St (B/C)", [], 40.775594, -73.97641),
    ("81st", "81 St-Museum of Natural History", [], 40.781433, -73.972143),
    ("86st_bc", "86 St (B/C)", [], 40.785868, -73.968916),
    ("96st_bc", "96 St (B/C)", [], 40.791642, -73.964696),
    ("cathedral_bc", "Cathedral Pkwy-110 St (B/C)", [], 40.800603, -73.958161),
    ("125st_acbd", "125 St (A/B/C/D)", [], 40.811109, -73.952343),
    ("cpn_110", "Central Park North (110 St)", [], 40.799075, -73.951822),
    ("116st_23", "116 St (2/3)", [], 40.802098, -73.949625),
    ("125st_23", "125 St (2/3)", [], 40.807754, -73.945495),
    # Upper East Side
    ("68st", "68 St-Hunter College", [], 40.768141, -73.96387),
    ("77st", "77 St", [], 40.77362, -73.959874),
    ("86st_456", "86 St (4/5/6)", [], 40.779492, -73.955589),
    ("96st_6", "96 St (6)", [], 40.785672, -73.95107),
    ("103st_6", "103 St (6)", [], 40.7906, -73.947478),
    ("110st_6", "110 St (6)", [], 40.79502, -73.94425),
    ("116st_6", "116 St (6)", [], 40.798629, -73.941617),
    ("125st_456", "125 St (4/5/6)", [], 40.804138, -73.937594),
    ("72st_q", "72 St (Q)", [], 40.768799, -73.958424),
    ("86st_q", "86 St (Q)", [], 40.777891, -73.951787),
    ("96st_q", "96 St (Q)", [], 40.784318, -73.947152),
    # Queens
    ("roosevelt_island", "Roosevelt Island", [], 40.759145, -73.95326),
    ("21st_queensbridge", "21 St-Queensbridge", [], 40.754203, -73.942836),
    ("vernon_jackson", "Vernon Blvd-Jackson Av", [], 40.742626, -73.953581),
    ("hunters_point", "Hunters Point Av", [], 40.742216, -73.948916),
    ("court_sq", "Court Sq", ["Court Sq-23 St"], 40.747023, -73.945264),
    ("queens_plaza", "Queens Plaza", [], 40.748973, -73.937243),
    ("queensboro_plaza", "Queensboro Plaza", [], 40.750582, -73.940202),
    ("39av", "39 Av-Dutch Kills", [], 40.752882, -73.932755),
    ("astoria_blvd", "Astoria Blvd", [], 40.770258, -73.917843),
    ("ditmars", "Astoria-Ditmars Blvd", [], 40.775036, -73.912034),
    ("33st_rawson", "33 St-Rawson St", [], 40.744587, -73.930997),
    ("40st_lowery", "40 St-Lowery St", [], 40.743781, -73.924016),
    ("46st_bliss", "46 St-Bliss St", [], 40.743132, -73.918435),
    ("61st_woodside", "61 St-Woodside", [], 40.74563, -73.902984),
    ("69st", "69 St", [], 40.746325, -73.896403),
    ("jackson_hts", "Jackson Hts-Roosevelt Av", ["74 St-Broadway"], 40.746848, -73.891394),
    ("82st", "82 St-Jackson Hts", [], 40.747659, -73.883697),
    ("90st", "90 St-Elmhurst Av", [], 40.748408, -73.876613),
    ("junction_blvd", "Junction Blvd", [], 40.749145, -73.869527),
    ("103st_corona", "103 St-Corona Plaza", [], 40.749865, -73.8627),
    ("111st", "111 St", [], 40.75173, -73.855334),
    ("mets_willets", "Mets-Willets Point", [], 40.754622, -73.845625),
    ("flushing_main", "Flushing-Main St", ["Flushing Main St", "Main St-Flushing"], 40.7596, -73.83003),
    # Bus stops
    ("m4_penn", "W 32 St/Penn Station", [], 40.749300, -73.990300),
    ("m4_madison_42", "Madison Av/E 42 St", [], 40.752700, -73.979000),
    ("m4_madison_59", "Madison Av/E 59 St", [], 40.763400, -73.971600),
    ("m4_madison_72", "Madison Av/E 72 St", [], 40.771300, -73.965900),
    ("m4_madison_86", "Madison Av/E 86 St", [], 40.780700, -73.957400),
    ("m4_5av_104", "5 Av/E 104 St", [], 40.792400, -73.952100),
    ("m4_cpn", "Central Park N/5 Av", [], 40.796800, -73.949400),
    ("m4_fdb_110", "Cathedral Pkwy/Frederick Douglass Blvd", [], 40.801300, -73.958600),
    ("m4_bway_110", "Cathedral Pkwy/Broadway", [], 40.803800, -73.966100),
    ("m4_bway_116", "Broadway/W 116 St", [], 40.807800, -73.964000),
    ("m5_6av_31", "6 Av/W 31 St", [], 40.748000, -73.989500),
    ("m5_6av_42", "6 Av/W 42 St", [], 40.754600, -73.984500),
    ("m5_cps_6av", "Central Park S/6 Av", [], 40.765600, -73.976300),
    ("m5_rsd_72", "Riverside Dr/W 72 St", [], 40.780900, -73.987100),
    ("m5_rsd_96", "Riverside Dr/W 96 St", [], 40.796000, -73.974500),
    ("m5_rsd_110", "Riverside Dr/W 110 St", [], 40.804300, -73.968500),
    ("m5_rsd_116", "Riverside Dr/W 116 St", [], 40.809000, -73.965700),
    ("m96_bway", "W 96 St/Broadway", [], 40.794000, -73.972200),
    ("m96_cpw", "W 96 St/Central Park W", [], 40.791700, -73.964300),
    ("m96_5av", "E 96 St/5 Av", [], 40.786900, -73.955300),
    ("m96_lex", "E 96 St/Lexington Av", [], 40.785600, -73.951000),
]

NYC_LINES = [
    ("1", "1", "subway", ["wtc_cortlandt", "chambers_123", "14st_123", "34st_penn_123", "times_sq", "columbus_circle",
                          "66st", "72st_123", "79st", "86st_1", "96st_123", "103st_1", "cathedral_pkwy",
                          "116st_columbia"]),
    ("2", "2", "subway", ["fulton", "chambers_123", "14st_123", "34st_penn_123", "times_sq", "72st_123", "96st_123",
                          "cpn_110", "116st_23", "125st_23"]),
    ("3", "3", "subway", ["fulton", "chambers_123", "14st_123", "34st_penn_123", "times_sq", "72st_123", "96st_123",
                          "cpn_110", "116st_23", "125st_23"]),
    ("A", "A", "subway", ["fulton", "chambers_ac", "14st_ace", "34st_penn_ace", "port_authority", "columbus_circle",
                          "125st_acbd"]),
    ("C", "C", "subway", ["fulton", "chambers_ac", "14st_ace", "34st_penn_ace", "port_authority", "50st_ce",
                          "columbus_circle", "72st_bc", "81st", "86st_bc", "96st_bc", "cathedral_bc", "125st_acbd"]),
    ("E", "E", "subway", ["world_trade_center", "14st_ace", "34st_penn_ace", "port_authority", "50st_ce", "7av_53",
                          "5av_53", "lex_53", "court_sq", "queens_plaza", "jackson_hts"]),
    ("B", "B", "subway", ["herald_sq", "bryant_pk", "47_50_rock", "7av_53", "columbus_circle", "72st_bc", "81st",
                          "86st_bc", "96st_bc", "cathedral_bc", "125st_acbd"]),
    ("D", "D", "subway", ["herald_sq", "bryant_pk", "47_50_rock", "7av_53", "columbus_circle", "125st_acbd"]),
    ("F", "F", "subway", ["herald_sq", "bryant_pk", "47_50_rock", "57st_f", "lex_63", "roosevelt_island",
                          "21st_queensbridge", "jackson_hts"]),
    ("M", "M", "subway", ["herald_sq", "bryant_pk", "47_50_rock", "5av_53", "lex_53", "court_sq", "queens_plaza",
                          "jackson_hts"]),
    ("N", "N", "subway", ["union_sq", "herald_sq", "times_sq", "49st", "57st_7av", "5av_59", "lex_59",
                          "queensboro_plaza", "39av", "astoria_blvd", "ditmars"]),
    ("Q", "Q", "subway", ["union_sq", "herald_sq", "times_sq", "57st_7av", "lex_63", "72st_q", "86st_q", "96st_q"]),
    ("R", "R", "subway", ["cortlandt_rw", "union_sq", "herald_sq", "times_sq", "49st", "57st_7av", "5av_59", "lex_59",
                          "queens_plaza", "jackson_hts"]),
    ("W", "W", "subway", ["cortlandt_rw", "union_sq", "herald_sq", "times_sq", "49st", "57st_7av", "5av_59", "lex_59",
                          "queensboro_plaza", "39av", "astoria_blvd", "ditmars"]),
    ("4", "4", "subway", ["fulton", "brooklyn_bridge", "union_sq", "grand_central", "lex_59", "86st_456",
                          "125st_456"]),
    ("5", "5", "subway", ["fulton", "brooklyn_bridge", "union_sq", "grand_central", "lex_59", "86st_456",
                          "125st_456"]),
    ("6", "6", "subway", ["brooklyn_bridge", "union_sq", "23st_6", "33st_6", "grand_central", "51st", "lex_59", "68st",
                          "77st", "86st_456", "96st_6", "103st_6", "110st_6", "116st_6", "125st_456"]),
    ("7", "7", "subway", ["34st_hudson_yards", "times_sq", "5av_bryant", "grand_central", "vernon_jackson",
                          "hunters_point", "court_sq", "queensboro_plaza", "33st_rawson", "40st_lowery", "46st_bliss",
                          "61st_woodside", "69st", "jackson_hts", "82st", "90st", "junction_blvd", "103st_corona",
                          "111st", "mets_willets", "flushing_main"]),
    ("7X", "<7>", "subway", ["34st_hudson_yards", "times_sq", "5av_bryant", "grand_central", "vernon_jackson",
                             "hunters_point", "court_sq", "queensboro_plaza", "61st_woodside", "jackson_hts",
                             "junction_blvd", "mets_willets", "flushing_main"]),
    ("S", "S", "subway", ["times_sq", "grand_central"]),
    ("L", "L", "subway", ["8av_l", "6av_l", "union_sq", "3av_l", "1av_l"]),
    ("M4", "M4", "bus", ["m4_penn", "m4_madison_42", "m4_madison_59", "m4_madison_72", "m4_madison_86", "m4_5av_104",
                         "m4_cpn", "m4_fdb_110", "m4_bway_110", "m4_bway_116"]),
    ("M5", "M5", "bus", ["m5_6av_31", "m5_6av_42", "m5_cps_6av", "m5_rsd_72", "m5_rsd_96", "m5_rsd_110",
                         "m5_rsd_116"]),
    ("M96", "M96", "bus", ["m96_bway", "m96_cpw", "m96_5av", "m96_lex"]),
]

NYC_BIKES = [
    ("cb-cathedral-broadway", 40.803900, -73.966900, 14),
    ("cb-cpw-103", 40.798000, -73.961000, 6),
    ("cb-cpn-acp", 40.799300, -73.955200, 3),
    ("cb-5av-e78", 40.776100, -73.963700, 9),
    ("cb-cpw-w72", 40.775800, -73.976600, 8),
    ("cb-cps-6av", 40.766000, -73.976400, 0),
    ("cb-8av-w57", 40.766200, -73.984000, 2),
    ("cb-broadway-w58", 40.767000, -73.981700, 5),
    ("cb-broadway-w41", 40.755300, -73.986800, 11),
    ("cb-w42-8av", 40.757500, -73.990000, 7),
    ("cb-w44-5av", 40.755100, -73.980300, 1),
]

DC_STATIONS = [
    ("shady_grove", "Shady Grove", [], 39.119819, -77.164921),
    ("rockville", "Rockville", [], 39.084215, -77.146424),
    ("twinbrook", "Twinbrook", [], 39.062359, -77.121113),
    ("north_bethesda", "North Bethesda", ["White Flint"], 39.048043, -77.113131),
    ("grosvenor", "Grosvenor-Strathmore", [], 39.029158, -77.10415),
    ("medical_center", "Medical Center", [], 39.000104, -77.096975),
    ("bethesda", "Bethesda", [], 38.984282, -77.094431),
    ("friendship_heights", "Friendship Heights", [], 38.960744, -77.085969),
    ("tenleytown", "Tenleytown-AU", [], 38.947808, -77.079615),
    ("van_ness", "Van Ness-UDC", [], 38.944551, -77.063583),
    ("cleveland_park", "Cleveland Park", [], 38.934703, -77.058226),
    ("woodley_park", "Woodley Park", [], 38.924999, -77.052648),
    ("dupont_circle", "Dupont Circle", [], 38.909499, -77.04362),
    ("farragut_north", "Farragut North", [], 38.903192, -77.039766),
    ("metro_center", "Metro Center", [], 38.898303, -77.028099),
    ("gallery_place", "Gallery Place", ["Gallery Pl-Chinatown", "Gallery Place-Chinatown"], 38.898303, -77.021917),
    ("judiciary_sq", "Judiciary Square", [], 38.896084, -77.016643),
    ("union_station", "Union Station", [], 38.897723, -77.006745),
    ("noma", "NoMa-Gallaudet U", [], 38.906952, -77.003161),
    ("rhode_island_ave", "Rhode Island Ave", [], 38.921031, -76.996293),
    ("brookland", "Brookland-CUA", [], 38.933234, -76.994544),
    ("fort_totten", "Fort Totten", [], 38.951777, -77.002174),
    ("takoma", "Takoma", [], 38.975532, -77.017626),
    ("silver_spring", "Silver Spring", [], 38.993841, -77.031321),
    ("forest_glen", "Forest Glen", [], 39.015413, -77.042953),
    ("wheaton", "Wheaton", [], 39.038558, -77.051098),
    ("glenmont", "Glenmont", [], 39.061713, -77.053512),
    ("anacostia", "Anacostia", [], 38.862072, -76.995648),
    ("navy_yard", "Navy Yard-Ballpark", [], 38.876588, -77.005086),
    ("waterfront", "Waterfront", [], 38.876221, -77.017491),
    ("lenfant_plaza", "L'Enfant Plaza", [], 38.884775, -77.021964),
    ("archives", "Archives", [], 38.893757, -77.021989),
    ("mt_vernon_sq", "Mt Vernon Sq", [], 38.905604, -77.022256),
    ("shaw", "Shaw-Howard U", [], 38.912919, -77.022194),
    ("u_street", "U Street", [], 38.916489, -77.028938),
    ("columbia_heights", "Columbia Heights", [], 38.928672, -77.032775),
    ("georgia_ave", "Georgia Ave-Petworth", [], 38.937434, -77.023817),
    ("west_hyattsville", "West Hyattsville", [], 38.954931, -76.969881),
    ("hyattsville_crossing", "Hyattsville Crossing", ["Prince George's Plaza"], 38.965276, -76.956182),
    ("college_park", "College Park-U of Md", [], 38.978523, -76.928432),
    ("greenbelt", "Greenbelt", [], 39.011036, -76.911362),
    ("pentagon", "Pentagon", [], 38.869349, -77.054013),
    ("rosslyn", "Rosslyn", [], 38.896595, -77.07146),
    ("foggy_bottom", "Foggy Bottom-GWU", [], 38.900599, -77.050273),
    ("farragut_west", "Farragut West", [], 38.901311, -77.03981),
    ("mcpherson_sq", "McPherson Square", [], 38.901316, -77.033652),
    ("federal_triangle", "Federal Triangle", [], 38.893757, -77.028218),
    ("smithsonian", "Smithsonian", [], 38.888022, -77.028232),
    ("federal_center_sw", "Federal Center SW", [], 38.884958, -77.01586),
    ("capitol_south", "Capitol South", [], 38.884968, -77.005137),
    ("eastern_market", "Eastern Market", [], 38.884124, -76.995334),
    ("potomac_ave", "Potomac Ave", [], 38.880841, -76.985721),
    ("stadium_armory", "Stadium-Armory", [], 38.886713, -76.977485),
    ("minnesota_ave", "Minnesota Ave", [], 38.898284, -76.948042),
    ("deanwood", "Deanwood", [], 38.908, -76.9355),
    ("cheverly", "Cheverly", [], 38.91652, -76.915427),
    ("landover", "Landover", [], 38.933, -76.8906),
    ("new_carrollton", "New Carrollton", [], 38.947674, -76.872144),
    ("j2_ewh_conn", "East-West Hwy/Connecticut Av", [], 38.986800, -77.077100),
    ("j2_ewh_16st", "East-West Hwy/16 St", [], 38.990600, -77.041300),
]

DC_LINES = [
    ("RD", "Red", "subway", ["shady_grove", "rockville", "twinbrook", "north_bethesda", "grosvenor", "medical_center",
                             "bethesda", "friendship_heights", "tenleytown", "van_ness", "cleveland_park",
                             "woodley_park", "dupont_circle", "farragut_north", "metro_center", "gallery_place",
                             "judiciary_sq", "union_station", "noma", "rhode_island_ave", "brookland", "fort_totten",
                             "takoma", "silver_spring", "forest_glen", "wheaton", "glenmont"]),
    ("GR", "Green", "subway", ["anacostia", "navy_yard", "waterfront", "lenfant_plaza", "archives", "gallery_place",
                               "mt_vernon_sq", "shaw", "u_street", "columbia_heights", "georgia_ave", "fort_totten",
                               "west_hyattsville", "hyattsville_crossing", "college_park", "greenbelt"]),
    ("YL", "Yellow", "subway", ["pentagon", "lenfant_plaza", "archives", "gallery_place", "mt_vernon_sq"]),
    ("OR", "Orange", "subway", ["rosslyn", "foggy_bottom", "farragut_west", "mcpherson_sq", "metro_center",
                                "federal_triangle", "smithsonian", "lenfant_plaza", "federal_center_sw",
                                "capitol_south", "eastern_market", "potomac_ave", "stadium_armory", "minnesota_ave",
                                "deanwood", "cheverly", "landover", "new_carrollton"]),
    ("J2", "J2", "bus", ["bethesda", "j2_ewh_conn", "j2_ewh_16st", "silver_spring"]),
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in (("nyc", build(NYC_STATIONS, NYC_LINES, NYC_BIKES)), ("dc", build(DC_STATIONS, DC_LINES))):
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
        print(f"{path}: {len(doc['stations'])} stations, {len(doc['lines'])} lines")


if __name__ == "__main__":
    main()
