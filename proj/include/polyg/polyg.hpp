// Umbrella header.

#pragma once

#include "polyg/graph_analysis.hpp"
#include "polyg/reduce.hpp"
#include "polyg/report.hpp"
#include "polyg/search.hpp"
#include "polyg/surface.hpp"
#include "polyg/transition.hpp"
#include "polyg/whitehead.hpp"
#include "polyg/word.hpp"

namespace polyg {
inline constexpr const char* version = "0.1.0";
}
