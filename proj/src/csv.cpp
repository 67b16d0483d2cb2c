#include "twpa/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace twpa {

std::string format_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

void write_echo(std::ostringstream& out, const std::vector<std::string>& config_echo) {
    for (const std::string& line : config_echo) out << "# " << line << "\n";
}

} // namespace

std::string spectrum_csv(const SpectrumResult& spec,
                         const std::vector<std::string>& config_echo) {
    std::ostringstream out;
    write_echo(out, config_echo);
    out << "frequency_hz,gain_db,lossy_gain_db,squeeze_min_db,squeeze_max_db,"
           "abs_squeeze_db,flag\n";
    for (std::size_t i = 0; i < spec.size(); ++i) {
        out << format_value(spec.frequencies[i]) << ',';
        if (spec.flags[i] == PointFlag::ok) {
            out << format_value(spec.gain_db[i]) << ','
                << format_value(spec.lossy_gain_db[i]) << ','
                << format_value(spec.squeeze_min_db[i]) << ','
                << format_value(spec.squeeze_max_db[i]) << ','
                << format_value(std::abs(spec.squeeze_min_db[i]));
        } else {
            out << ",,,,"; // flagged points carry no numeric values
        }
        out << ',' << flag_name(spec.flags[i]) << '\n';
    }
    return out.str();
}

std::string sweep2d_csv(const SweepGrid2D& grid,
                        const std::vector<std::string>& config_echo) {
    std::ostringstream out;
    write_echo(out, config_echo);
    out << "# metric = " << grid.metric_name << "\n";
    out << "cc_f,cr_f,value,flag\n";
    for (std::size_t i = 0; i < grid.cr_values.size(); ++i) {
        for (std::size_t j = 0; j < grid.cc_values.size(); ++j) {
            out << format_value(grid.cc_values[j]) << ',' << format_value(grid.cr_values[i])
                << ',';
            const std::optional<double>& v = grid.field[i][j];
            if (v) {
                out << format_value(*v) << ",ok\n";
            } else {
                out << ",invalid\n";
            }
        }
    }
    return out.str();
}

std::string pareto_csv(const std::vector<ParetoPoint>& front,
                       const std::string& name1, const std::string& name2,
                       const std::vector<std::string>& config_echo) {
    std::ostringstream out;
    write_echo(out, config_echo);
    out << "cc_f,cr_f," << name1 << ',' << name2 << '\n';
    for (const ParetoPoint& p : front) {
        out << format_value(p.cc) << ',' << format_value(p.cr) << ','
            << format_value(p.value1) << ',' << format_value(p.value2) << '\n';
    }
    return out.str();
}

} // namespace twpa
