#pragma once

#include "bcjacobi.hpp"
#include "ensembles.hpp"
#include "hypergeometric.hpp"
#include "laurent.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"
#include "partition.hpp"
#include "report.hpp"
#include "specialfun.hpp"
#include "symfun.hpp"
#include "szego.hpp"

namespace charmom {
inline constexpr const char* version = "0.1.0";
}
