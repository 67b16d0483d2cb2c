#include "twpa/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace twpa {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
    bool leading = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '#' || (s[i] == ';' && leading)) return s.substr(0, i);
        if (!std::isspace(static_cast<unsigned char>(s[i]))) leading = false;
        // '#' always starts a comment; ';' only as a full-line marker
    }
    return s;
}

std::map<std::string, Section> tokenize(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError("unterminated section header", line_no);
            }
            current = trim(body.substr(1, body.size() - 2));
            if (current.empty()) throw ConfigError("empty section name", line_no);
            sections[current]; // may legitimately be empty
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        if (current.empty()) {
            throw ConfigError("key outside any [section]", line_no);
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) throw ConfigError("empty value", line_no, key);
        if (!sections[current].emplace(key, Entry{value, line_no}).second) {
            throw ConfigError("duplicate key", line_no, key);
        }
    }
    return sections;
}

double parse_double(const Entry& e, const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("expected a number, got '" + e.value + "'", e.line, field);
    }
    return v;
}

int parse_int(const Entry& e, const std::string& field) {
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0') {
        throw ConfigError("expected an integer, got '" + e.value + "'", e.line, field);
    }
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

    bool has(const std::string& section) const { return sections_.count(section) > 0; }

    Entry* find(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    double require_double(const std::string& section, const std::string& key) {
        Entry* e = find(section, key);
        if (!e) throw ConfigError("missing required key", 0, section + "." + key);
        return parse_double(*e, section + "." + key);
    }

    double get_double(const std::string& section, const std::string& key, double fallback) {
        Entry* e = find(section, key);
        return e ? parse_double(*e, section + "." + key) : fallback;
    }

    int require_int(const std::string& section, const std::string& key) {
        Entry* e = find(section, key);
        if (!e) throw ConfigError("missing required key", 0, section + "." + key);
        return parse_int(*e, section + "." + key);
    }

    int get_int(const std::string& section, const std::string& key, int fallback) {
        Entry* e = find(section, key);
        return e ? parse_int(*e, section + "." + key) : fallback;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) {
        Entry* e = find(section, key);
        return e ? e->value : fallback;
    }

    /// Any key never read is a typo worth failing loudly on.
    void reject_unused() const {
        for (const auto& [name, section] : sections_) {
            for (const auto& [key, entry] : section) {
                if (!entry.used) {
                    throw ConfigError("unknown key", entry.line, name + "." + key);
                }
            }
        }
    }

private:
    std::map<std::string, Section> sections_;
};

void require_positive(double v, const std::string& field) {
    if (!(v > 0.0)) throw ConfigError("value must be positive", 0, field);
}

Metric2D::Kind parse_kind(const std::string& text, const std::string& field) {
    if (text == "gain_at_frequency") return Metric2D::Kind::gain_at_frequency;
    if (text == "abs_squeezing_at_frequency") return Metric2D::Kind::abs_squeezing_at_frequency;
    if (text == "bandwidth_above_threshold") return Metric2D::Kind::bandwidth_above_threshold;
    throw ConfigError("unknown metric kind '" + text + "'", 0, field);
}

MetricBlock read_metric(Reader& reader, const std::string& section,
                        Metric2D::Kind kind, const GridBlock& grid) {
    MetricBlock m;
    m.kind = kind;
    m.frequency_ghz = reader.get_double(section, "frequency_ghz", 5.0);
    m.threshold_db = reader.get_double(section, "threshold_db", 16.0);
    m.band_lo_ghz = reader.get_double(section, "band_lo_ghz", grid.f_lo_ghz);
    m.band_hi_ghz = reader.get_double(section, "band_hi_ghz", grid.f_hi_ghz);
    const std::string source = reader.get_string(section, "bandwidth_of", "gain");
    if (source == "gain") {
        m.bandwidth_source = Metric2D::Source::gain;
    } else if (source == "squeezing") {
        m.bandwidth_source = Metric2D::Source::abs_squeezing;
    } else {
        throw ConfigError("bandwidth_of must be 'gain' or 'squeezing'", 0,
                          section + ".bandwidth_of");
    }
    require_positive(m.frequency_ghz, section + ".frequency_ghz");
    if (!(m.band_lo_ghz < m.band_hi_ghz)) {
        throw ConfigError("band_lo_ghz must be below band_hi_ghz", 0, section + ".band_lo_ghz");
    }
    return m;
}

std::string format_12g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    auto sections = tokenize(text);
    for (const auto& [name, _] : sections) {
        static const char* known[] = {"device", "pump",  "resonator", "search", "loss",
                                      "grid",   "sweep", "objective", "output"};
        bool ok = false;
        for (const char* k : known) ok = ok || name == k;
        if (!ok) throw ConfigError("unknown section [" + name + "]");
    }
    Reader reader(std::move(sections));
    RunConfig config;

    if (!reader.has("device")) throw ConfigError("missing [device] section");
    config.device.ic_ua = reader.require_double("device", "ic_ua");
    config.device.cj_ff = reader.require_double("device", "cj_ff");
    config.device.n_jj = reader.require_int("device", "n_jj");
    config.device.z0_ohm = reader.get_double("device", "z0_ohm", 50.0);
    require_positive(config.device.ic_ua, "device.ic_ua");
    require_positive(config.device.cj_ff, "device.cj_ff");
    require_positive(config.device.z0_ohm, "device.z0_ohm");
    if (config.device.n_jj < 1) throw ConfigError("value must be >= 1", 0, "device.n_jj");

    if (!reader.has("pump")) throw ConfigError("missing [pump] section");
    config.pump.ip_ua = reader.require_double("pump", "ip_ua");
    config.pump.fp_ghz = reader.require_double("pump", "fp_ghz");
    if (config.pump.ip_ua < 0.0) throw ConfigError("value must be >= 0", 0, "pump.ip_ua");
    require_positive(config.pump.fp_ghz, "pump.fp_ghz");
    if (config.pump.ip_ua >= config.device.ic_ua) {
        throw ConfigError("pump current must stay below the critical current", 0, "pump.ip_ua");
    }

    if (reader.has("resonator") == reader.has("search")) {
        throw ConfigError("exactly one of [resonator] or [search] must be present");
    }
    if (reader.has("resonator")) {
        ResonatorBlock r;
        r.fr_ghz = reader.require_double("resonator", "fr_ghz");
        r.cc_ff = reader.require_double("resonator", "cc_ff");
        r.cr_pf = reader.require_double("resonator", "cr_pf");
        require_positive(r.fr_ghz, "resonator.fr_ghz");
        if (r.cc_ff < 0.0) throw ConfigError("value must be >= 0", 0, "resonator.cc_ff");
        if (r.cr_pf < 0.0) throw ConfigError("value must be >= 0", 0, "resonator.cr_pf");
        config.resonator = r;
    } else {
        SearchBlock s;
        s.fr_ghz = reader.require_double("search", "fr_ghz");
        s.cc_min_ff = reader.require_double("search", "cc_min_ff");
        s.cc_max_ff = reader.require_double("search", "cc_max_ff");
        s.cr_min_pf = reader.require_double("search", "cr_min_pf");
        s.cr_max_pf = reader.require_double("search", "cr_max_pf");
        s.cc_points = reader.get_int("search", "cc_points", 50);
        s.cr_points = reader.get_int("search", "cr_points", 50);
        require_positive(s.fr_ghz, "search.fr_ghz");
        require_positive(s.cc_min_ff, "search.cc_min_ff");
        require_positive(s.cr_min_pf, "search.cr_min_pf");
        if (!(s.cc_min_ff < s.cc_max_ff)) {
            throw ConfigError("cc_min_ff must be below cc_max_ff", 0, "search.cc_min_ff");
        }
        if (!(s.cr_min_pf < s.cr_max_pf)) {
            throw ConfigError("cr_min_pf must be below cr_max_pf", 0, "search.cr_min_pf");
        }
        if (s.cc_points < 1 || s.cr_points < 1) {
            throw ConfigError("grid resolution must be >= 1", 0, "search.cc_points");
        }
        config.search = s;
    }

    // loss: a single eta, an explicit list, or an evenly spaced range
    if (reader.has("loss")) {
        Entry* list = reader.find("loss", "eta_values");
        Entry* start = reader.find("loss", "eta_start");
        if (list) {
            config.loss.eta_values.clear();
            for (const std::string& item : split_list(list->value)) {
                Entry fake{item, list->line};
                config.loss.eta_values.push_back(parse_double(fake, "loss.eta_values"));
            }
            if (config.loss.eta_values.empty()) {
                throw ConfigError("empty eta list", list->line, "loss.eta_values");
            }
        } else if (start) {
            const double lo = parse_double(*start, "loss.eta_start");
            const double hi = reader.require_double("loss", "eta_stop");
            const int n = reader.require_int("loss", "eta_points");
            if (n < 2) throw ConfigError("eta_points must be >= 2", 0, "loss.eta_points");
            config.loss.eta_values = linspace(lo, hi, n);
        } else {
            config.loss.eta_values = {reader.get_double("loss", "eta", 1.0)};
        }
        for (double eta : config.loss.eta_values) {
            if (eta < 0.0 || eta > 1.0) {
                throw ConfigError("eta must lie in [0, 1]", 0, "loss.eta");
            }
        }
    }

    config.grid.f_lo_ghz = reader.get_double("grid", "f_lo_ghz", 1.0);
    config.grid.f_hi_ghz = reader.get_double("grid", "f_hi_ghz", 11.0);
    config.grid.points = reader.get_int("grid", "points", 2001);
    config.grid.exclusion_margin_mhz = reader.get_double("grid", "exclusion_margin_mhz", 0.0);
    require_positive(config.grid.f_lo_ghz, "grid.f_lo_ghz");
    if (!(config.grid.f_lo_ghz < config.grid.f_hi_ghz)) {
        throw ConfigError("f_lo_ghz must be below f_hi_ghz", 0, "grid.f_lo_ghz");
    }
    if (config.grid.points < 2) throw ConfigError("points must be >= 2", 0, "grid.points");
    if (config.grid.exclusion_margin_mhz < 0.0) {
        throw ConfigError("value must be >= 0", 0, "grid.exclusion_margin_mhz");
    }

    if (reader.has("sweep")) {
        const std::string metrics = reader.get_string("sweep", "metrics", "gain,squeeze");
        for (const std::string& name : split_list(metrics)) {
            Metric2D::Kind kind;
            Metric2D::Source source = Metric2D::Source::gain;
            if (name == "gain") {
                kind = Metric2D::Kind::gain_at_frequency;
            } else if (name == "squeeze") {
                kind = Metric2D::Kind::abs_squeezing_at_frequency;
            } else if (name == "bandwidth_gain") {
                kind = Metric2D::Kind::bandwidth_above_threshold;
            } else if (name == "bandwidth_squeeze") {
                kind = Metric2D::Kind::bandwidth_above_threshold;
                source = Metric2D::Source::abs_squeezing;
            } else {
                throw ConfigError("unknown sweep metric '" + name + "'", 0, "sweep.metrics");
            }
            MetricBlock m = read_metric(reader, "sweep", kind, config.grid);
            m.bandwidth_source = source;
            config.sweep_metrics.push_back(m);
        }
    }

    if (reader.has("objective")) {
        ObjectiveBlock obj;
        Entry* kind = reader.find("objective", "kind");
        if (!kind) throw ConfigError("missing required key", 0, "objective.kind");
        obj.metric = read_metric(reader, "objective",
                                 parse_kind(kind->value, "objective.kind"), config.grid);
        Entry* pareto = reader.find("objective", "pareto_with");
        if (pareto) {
            obj.pareto = true;
            MetricBlock second = obj.metric;
            second.kind = parse_kind(pareto->value, "objective.pareto_with");
            obj.pareto_second = second;
        }
        config.objective = obj;
    }

    config.output.dir = reader.get_string("output", "dir", ".");
    const std::string formats = reader.get_string("output", "formats", "csv,svg");
    config.output.csv = false;
    config.output.svg = false;
    for (const std::string& fmt : split_list(formats)) {
        if (fmt == "csv") config.output.csv = true;
        else if (fmt == "svg") config.output.svg = true;
        else throw ConfigError("unknown format '" + fmt + "'", 0, "output.formats");
    }
    if (!config.output.csv && !config.output.svg) {
        throw ConfigError("at least one output format is required", 0, "output.formats");
    }

    reader.reject_unused();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<std::string> echo_config(const RunConfig& config) {
    std::vector<std::string> out;
    auto kv = [&](const std::string& key, const std::string& value) {
        out.push_back(key + " = " + value);
    };

    out.push_back("[device]");
    kv("ic_ua", format_12g(config.device.ic_ua));
    kv("cj_ff", format_12g(config.device.cj_ff));
    kv("n_jj", std::to_string(config.device.n_jj));
    kv("z0_ohm", format_12g(config.device.z0_ohm));

    out.push_back("[pump]");
    kv("ip_ua", format_12g(config.pump.ip_ua));
    kv("fp_ghz", format_12g(config.pump.fp_ghz));

    if (config.resonator) {
        out.push_back("[resonator]");
        kv("fr_ghz", format_12g(config.resonator->fr_ghz));
        kv("cc_ff", format_12g(config.resonator->cc_ff));
        kv("cr_pf", format_12g(config.resonator->cr_pf));
    }
    if (config.search) {
        out.push_back("[search]");
        kv("fr_ghz", format_12g(config.search->fr_ghz));
        kv("cc_min_ff", format_12g(config.search->cc_min_ff));
        kv("cc_max_ff", format_12g(config.search->cc_max_ff));
        kv("cc_points", std::to_string(config.search->cc_points));
        kv("cr_min_pf", format_12g(config.search->cr_min_pf));
        kv("cr_max_pf", format_12g(config.search->cr_max_pf));
        kv("cr_points", std::to_string(config.search->cr_points));
    }

    out.push_back("[loss]");
    std::string etas;
    for (std::size_t i = 0; i < config.loss.eta_values.size(); ++i) {
        if (i) etas += ",";
        etas += format_12g(config.loss.eta_values[i]);
    }
    kv("eta_values", etas);

    out.push_back("[grid]");
    kv("f_lo_ghz", format_12g(config.grid.f_lo_ghz));
    kv("f_hi_ghz", format_12g(config.grid.f_hi_ghz));
    kv("points", std::to_string(config.grid.points));
    kv("exclusion_margin_mhz", format_12g(config.grid.exclusion_margin_mhz));

    auto metric_lines = [&](const std::string& header, const MetricBlock& m) {
        out.push_back(header);
        switch (m.kind) {
            case Metric2D::Kind::gain_at_frequency: kv("kind", "gain_at_frequency"); break;
            case Metric2D::Kind::abs_squeezing_at_frequency:
                kv("kind", "abs_squeezing_at_frequency");
                break;
            case Metric2D::Kind::bandwidth_above_threshold:
                kv("kind", "bandwidth_above_threshold");
                break;
        }
        kv("frequency_ghz", format_12g(m.frequency_ghz));
        kv("threshold_db", format_12g(m.threshold_db));
        kv("band_lo_ghz", format_12g(m.band_lo_ghz));
        kv("band_hi_ghz", format_12g(m.band_hi_ghz));
        kv("bandwidth_of", m.bandwidth_source == Metric2D::Source::gain ? "gain" : "squeezing");
    };
    for (const MetricBlock& m : config.sweep_metrics) {
        metric_lines("[sweep:" + resolve_metric(m).name() + "]", m);
    }
    if (config.objective) {
        metric_lines("[objective]", config.objective->metric);
        if (config.objective->pareto_second) {
            metric_lines("[objective:pareto_with]", *config.objective->pareto_second);
        }
    }

    out.push_back("[output]");
    kv("dir", config.output.dir);
    std::string formats;
    if (config.output.csv) formats = "csv";
    if (config.output.svg) formats += formats.empty() ? "svg" : ",svg";
    kv("formats", formats);
    // thread count deliberately not echoed: output bytes must not depend on it
    return out;
}

DeviceParams resolve_device(const RunConfig& config) {
    return derive_device(config.device.ic_ua * 1e-6, config.device.cj_ff * 1e-15,
                         config.device.n_jj, config.device.z0_ohm);
}

PumpConfig resolve_pump(const RunConfig& config, const DeviceParams& device) {
    return make_pump(config.pump.ip_ua * 1e-6, config.pump.fp_ghz * 1e9, device);
}

FrequencyGrid resolve_grid(const RunConfig& config) {
    return make_grid(config.grid.f_lo_ghz * 1e9, config.grid.f_hi_ghz * 1e9,
                     config.grid.points, config.grid.exclusion_margin_mhz * 1e6);
}

Metric2D resolve_metric(const MetricBlock& block) {
    Metric2D metric;
    metric.kind = block.kind;
    metric.frequency = block.frequency_ghz * 1e9;
    metric.threshold_db = block.threshold_db;
    metric.band_lo = block.band_lo_ghz * 1e9;
    metric.band_hi = block.band_hi_ghz * 1e9;
    metric.bandwidth_source = block.bandwidth_source;
    return metric;
}

} // namespace twpa
