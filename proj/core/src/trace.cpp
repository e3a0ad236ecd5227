#include "nlisim/trace.hpp"

#include "nlisim/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

namespace nli {

namespace {

using nlohmann::json;

std::string fmt17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double parse_double(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        fail("csv_parse",
             "line " + std::to_string(line_no) + ": malformed number '" + field + "'");
    }
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

struct CsvLines {
    std::vector<std::pair<std::size_t, std::string>> rows;  // line number, content
    std::vector<std::string> comments;
};

CsvLines read_lines(const std::string& text, const char* expected_header) {
    CsvLines out;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::size_t start = 1;
            while (start < line.size() && line[start] == ' ') {
                ++start;
            }
            out.comments.push_back(line.substr(start));
            continue;
        }
        if (!header_seen) {
            if (line != expected_header) {
                fail("schema", "expected header '" + std::string(expected_header) +
                                   "', got '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        out.rows.emplace_back(line_no, line);
    }
    if (!header_seen) {
        fail("empty_input", "no header found; empty or comment-only input");
    }
    return out;
}

double to_dbm_checked(double mw, const char* what) {
    if (!(mw > 0.0)) {
        fail("nonpositive_power",
             std::string(what) + " = " + fmt17(mw) + " cannot be expressed in dBm");
    }
    return linear_to_dbm(mw);
}

}  // namespace

void validate_model(const TraceModel& model) {
    if (model.n_bins < 16) {
        fail("invalid_config", "trace model: n_bins must be >= 16");
    }
    if (!(model.f_span > 4.0 * model.rbw)) {
        fail("invalid_config", "trace model: f_span must exceed 4*rbw");
    }
    if (!(model.k_const > 0.0) || !(model.electronics_floor > 0.0) || !(model.f_mod > 0.0) ||
        !(model.rbw > 0.0)) {
        fail("invalid_config", "trace model: powers and frequencies must be positive");
    }
    if (model.noise_jitter_db < 0.0) {
        fail("invalid_config", "trace model: noise_jitter_db must be >= 0");
    }
}

SpectrumTrace synth_trace(const TraceModel& model, const OutputMoments& moments, double phi,
                          double technical_noise_coeff) {
    validate_model(model);

    SpectrumTrace trace;
    trace.phi = phi;
    trace.freqs.resize(model.n_bins);
    trace.powers.resize(model.n_bins);

    const double f_lo = model.f_mod - model.f_span / 2.0;
    const double df = model.f_span / (model.n_bins - 1);
    int peak_bin = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < model.n_bins; ++i) {
        trace.freqs[i] = f_lo + i * df;
        const double dist = std::abs(trace.freqs[i] - model.f_mod);
        if (dist < best) {
            best = dist;
            peak_bin = i;
        }
    }

    double background = model.k_const * moments.var_c + model.electronics_floor;
    if (technical_noise_coeff > 0.0) {
        background += technical_noise_coeff * model.k_const * moments.mean_c * moments.mean_c;
    }
    std::mt19937_64 rng(model.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < model.n_bins; ++i) {
        double power = background;
        if (i == peak_bin) {
            power += model.k_const * moments.second_c;
        }
        if (model.noise_jitter_db > 0.0) {
            power *= std::pow(10.0, model.noise_jitter_db * normal(rng) / 10.0);
        }
        trace.powers[i] = power;
    }
    return trace;
}

double extract_peak(const SpectrumTrace& trace, double f_mod, double window) {
    if (window <= 0.0) {
        fail("invalid_argument", "extract_peak: window must be > 0");
    }
    double peak = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < trace.freqs.size(); ++i) {
        if (std::abs(trace.freqs[i] - f_mod) <= window / 2.0) {
            peak = std::max(peak, trace.powers[i]);
            found = true;
        }
    }
    if (!found) {
        fail("window_outside_grid", "extract_peak: no bins fall inside the window");
    }
    return peak;
}

double estimate_noise(const SpectrumTrace& trace, double f_mod, double guard, double span) {
    if (guard < 0.0 || span <= 0.0) {
        fail("invalid_argument", "estimate_noise: guard must be >= 0 and span > 0");
    }
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < trace.freqs.size(); ++i) {
        const double dist = std::abs(trace.freqs[i] - f_mod);
        if (dist > guard && dist <= guard + span) {
            sum += trace.powers[i];
            ++count;
        }
    }
    if (count < 4) {
        fail("insufficient_bins",
             "estimate_noise: only " + std::to_string(count) + " bins outside the guard");
    }
    return sum / count;
}

double dbm_to_linear(double dbm) {
    return std::pow(10.0, dbm / 10.0);
}

double linear_to_dbm(double mw) {
    return 10.0 * std::log10(mw);
}

std::string scan_to_csv(const FringeScan& scan, const std::string& config_json) {
    for (std::size_t i = 1; i < scan.points.size(); ++i) {
        if (!(scan.points[i].phi > scan.points[i - 1].phi)) {
            fail("invalid_scan", "scan phases must be strictly increasing");
        }
    }
    json comment = json::object();
    if (!config_json.empty()) {
        json parsed = json::parse(config_json, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_object()) {
            comment = std::move(parsed);
        }
    }
    if (scan.floor > 0.0) {
        comment["electronics_floor_dbm"] = linear_to_dbm(scan.floor);
    }

    std::string out;
    if (!comment.empty()) {
        out += "# " + comment.dump() + "\n";
    }
    out += "phi_rad,p_sideband_dbm,p_noise_dbm\n";
    for (const FringePoint& p : scan.points) {
        out += fmt17(p.phi) + "," + fmt17(to_dbm_checked(p.p_sideband, "p_sideband")) + "," +
               fmt17(to_dbm_checked(p.p_noise, "p_noise")) + "\n";
    }
    return out;
}

FringeScan csv_to_scan(const std::string& text, std::string* config_json_out) {
    const CsvLines lines = read_lines(text, "phi_rad,p_sideband_dbm,p_noise_dbm");
    FringeScan scan;
    for (const std::string& comment : lines.comments) {
        json parsed = json::parse(comment, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_object()) {
            if (config_json_out) {
                *config_json_out = parsed.dump();
            }
            if (parsed.contains("electronics_floor_dbm") &&
                parsed["electronics_floor_dbm"].is_number()) {
                scan.floor = dbm_to_linear(parsed["electronics_floor_dbm"].get<double>());
            }
            break;
        }
    }
    for (const auto& [line_no, row] : lines.rows) {
        const std::vector<std::string> fields = split_fields(row);
        if (fields.size() != 3) {
            fail("csv_parse", "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                  std::to_string(fields.size()));
        }
        FringePoint point;
        point.phi = parse_double(fields[0], line_no);
        point.p_sideband = dbm_to_linear(parse_double(fields[1], line_no));
        point.p_noise = dbm_to_linear(parse_double(fields[2], line_no));
        if (!scan.points.empty() && !(point.phi > scan.points.back().phi)) {
            fail("invalid_scan",
                 "line " + std::to_string(line_no) + ": phases must be strictly increasing");
        }
        scan.points.push_back(point);
    }
    if (scan.points.empty()) {
        fail("empty_input", "scan CSV contains no data rows");
    }
    return scan;
}

std::string trace_to_csv(const SpectrumTrace& trace) {
    json comment = json::object();
    if (!trace.config_json.empty()) {
        json parsed = json::parse(trace.config_json, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_object()) {
            comment = std::move(parsed);
        }
    }
    comment["phi_rad"] = trace.phi;

    std::string out = "# " + comment.dump() + "\n";
    out += "freq_hz,power_dbm\n";
    for (std::size_t i = 0; i < trace.freqs.size(); ++i) {
        out += fmt17(trace.freqs[i]) + "," +
               fmt17(to_dbm_checked(trace.powers[i], "power")) + "\n";
    }
    return out;
}

SpectrumTrace csv_to_trace(const std::string& text) {
    const CsvLines lines = read_lines(text, "freq_hz,power_dbm");
    SpectrumTrace trace;
    for (const std::string& comment : lines.comments) {
        json parsed = json::parse(comment, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_object()) {
            if (parsed.contains("phi_rad") && parsed["phi_rad"].is_number()) {
                trace.phi = parsed["phi_rad"].get<double>();
            }
            trace.config_json = parsed.dump();
            break;
        }
    }
    for (const auto& [line_no, row] : lines.rows) {
        const std::vector<std::string> fields = split_fields(row);
        if (fields.size() != 2) {
            fail("csv_parse", "line " + std::to_string(line_no) + ": expected 2 fields, got " +
                                  std::to_string(fields.size()));
        }
        const double freq = parse_double(fields[0], line_no);
        if (!trace.freqs.empty() && !(freq > trace.freqs.back())) {
            fail("invalid_trace",
                 "line " + std::to_string(line_no) + ": frequencies must be increasing");
        }
        trace.freqs.push_back(freq);
        trace.powers.push_back(dbm_to_linear(parse_double(fields[1], line_no)));
    }
    if (trace.freqs.empty()) {
        fail("empty_input", "trace CSV contains no data rows");
    }
    return trace;
}

}  // namespace nli
