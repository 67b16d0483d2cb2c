#pragma once

// CSV emission with fixed 12-significant-digit float formatting so identical
// runs produce byte-identical files. Flagged/invalid values serialize as
// empty fields, never as zeros.

#include <optional>
#include <string>
#include <vector>

#include "twpa/optimize.hpp"

namespace twpa {

/// %.12g rendering used for every numeric output field.
std::string format_value(double value);

/// Spectrum table: frequency_hz, gain_db, lossy_gain_db, squeeze_min_db,
/// squeeze_max_db, abs_squeeze_db, flag. Header lines echo the resolved
/// config as '# ' comments.
std::string spectrum_csv(const SpectrumResult& spec,
                         const std::vector<std::string>& config_echo);

/// Long-format 2D sweep table: cc_f, cr_f, value, flag.
std::string sweep2d_csv(const SweepGrid2D& grid,
                        const std::vector<std::string>& config_echo);

/// Pareto front table: cc_f, cr_f, value1, value2.
std::string pareto_csv(const std::vector<ParetoPoint>& front,
                       const std::string& name1, const std::string& name2,
                       const std::vector<std::string>& config_echo);

} // namespace twpa
