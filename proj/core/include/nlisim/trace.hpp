#pragma once

#include "nlisim/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nli {

// Spectrum-analyzer synthesis and extraction. The measured tone sits at the
// chopper frequency f_mod: the peak bin carries K*<n_c^2> on top of the
// noise background, every bin carries K*<Delta n_c^2> plus the electronics
// floor, and each bin is multiplied by lognormal display jitter (Gaussian in
// dB). All powers are linear milliwatts internally; dBm appears only at the
// CSV boundary.

struct TraceModel {
    double k_const = 1e-12;          // mW per photon-number-squared
    double f_mod = 750e3;            // Hz
    double f_span = 50e3;            // Hz, grid is centered on f_mod
    int n_bins = 201;
    double rbw = 300.0;              // Hz
    double electronics_floor = 1e-15;  // mW
    double noise_jitter_db = 0.3;    // std-dev of per-bin jitter, dB
    std::uint64_t rng_seed = 1;
};

/// Throws Error("invalid_config") unless n_bins >= 16, f_span > 4*rbw and
/// all powers are positive.
void validate_model(const TraceModel& model);

struct SpectrumTrace {
    std::vector<double> freqs;   // Hz, uniform ascending grid
    std::vector<double> powers;  // linear mW, same length
    double phi = 0.0;            // phase setting this trace was taken at
    std::string config_json;     // config snapshot carried through CSV
};

struct FringePoint {
    double phi = 0;
    double p_sideband = 0;  // linear mW
    double p_noise = 0;     // linear mW
};

/// Ordered phase scan, the unit of analysis for fringe fits and noise
/// scaling. Phases must be strictly increasing.
struct FringeScan {
    std::vector<FringePoint> points;
    double floor = 0.0;  // recorded electronics floor, linear mW
};

/// Deterministic synthetic trace for the given moments; identical inputs and
/// seed give identical bits. technical_noise_coeff optionally adds a
/// classical intensity-noise background coeff*K*mean_c^2 (default off).
SpectrumTrace synth_trace(const TraceModel& model, const OutputMoments& moments, double phi,
                          double technical_noise_coeff = 0.0);

/// Maximum bin power within [f_mod - window/2, f_mod + window/2].
double extract_peak(const SpectrumTrace& trace, double f_mod, double window);

/// Mean of bin powers with guard < |f - f_mod| <= guard + span on both
/// sides; requires at least 4 contributing bins.
double estimate_noise(const SpectrumTrace& trace, double f_mod, double guard, double span);

double dbm_to_linear(double dbm);
double linear_to_dbm(double mw);

/// CSV with header phi_rad,p_sideband_dbm,p_noise_dbm and a leading '#'
/// comment carrying the config snapshot (JSON). Numbers at 17 significant
/// digits, so parsing returns bit-identical doubles.
std::string scan_to_csv(const FringeScan& scan, const std::string& config_json = "");

/// Parses scan CSV; malformed rows raise Error("csv_parse") with the line
/// number, a wrong header raises Error("schema"). Any '#' JSON comment is
/// returned through config_json_out when non-null.
FringeScan csv_to_scan(const std::string& text, std::string* config_json_out = nullptr);

/// CSV with header freq_hz,power_dbm; same conventions as the scan CSV.
std::string trace_to_csv(const SpectrumTrace& trace);
SpectrumTrace csv_to_trace(const std::string& text);

}  // namespace nli
