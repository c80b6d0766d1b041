#pragma once

#include "detour/brute_force.hpp"
#include "detour/depart_time.hpp"
#include "detour/digest.hpp"
#include "detour/directions.hpp"
#include "detour/disruption.hpp"
#include "detour/errors.hpp"
#include "detour/geo.hpp"
#include "detour/gtfs.hpp"
#include "detour/harness.hpp"
#include "detour/http.hpp"
#include "detour/llm.hpp"
#include "detour/metrics.hpp"
#include "detour/network.hpp"
#include "detour/pipeline.hpp"
#include "detour/route.hpp"
#include "detour/router.hpp"
#include "detour/scenario.hpp"
#include "detour/text.hpp"
