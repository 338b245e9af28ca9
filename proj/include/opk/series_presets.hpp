#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opk/power_series.hpp"

namespace opk {

/// Closed-form Poincaré series of the operads studied by the classifier,
/// expanded exactly to the requested order. Names follow the multiplicity
/// triple (trivial, standard, sign) of the relation module of the
/// associative quotient, optionally suffixed by the parameter stratum.
RationalSeries preset_series(std::string_view name, int order);
std::vector<std::string> preset_series_names();

/// Weight-graded series (u marks the number of brackets in the polarized
/// presentation).
WeightedSeries weighted_preset_series(std::string_view name, int order);
std::vector<std::string> weighted_preset_series_names();

}  // namespace opk
