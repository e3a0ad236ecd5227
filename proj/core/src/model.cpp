#include "nlisim/model.hpp"

#include "nlisim/error.hpp"
#include "nlisim/gaussian.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nli {

namespace {

constexpr int kProbe = 0;
constexpr int kConj = 1;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void validate_config(const InterferometerConfig& config) {
    if (config.g1 < 1.0 || config.g2 < 1.0) {
        fail("invalid_config", "gains must be >= 1");
    }
    if (config.alpha2 < 0.0) {
        fail("invalid_config", "alpha2 must be >= 0");
    }
    for (double eta : {config.probe_eta, config.conj_eta, config.det_eta}) {
        if (eta < 0.0 || eta > 1.0) {
            fail("invalid_config", "efficiencies must lie in [0, 1]");
        }
    }
}

OutputMoments run_exact(const InterferometerConfig& config, double phi) {
    validate_config(config);

    GaussianState state = vacuum_state(2);
    state = displace(state, kProbe, std::sqrt(config.alpha2));
    state = apply(two_mode_squeezer(config.g1, config.pump_phase, kProbe, kConj), state);

    const double total_phase = config.double_pass ? 2.0 * phi : phi;
    state = apply(phase_shift(total_phase, kProbe), state);
    state = loss_channel(state, kProbe, config.probe_eta);
    state = loss_channel(state, kConj, config.conj_eta);

    state = apply(two_mode_squeezer(config.g2, config.pump_phase, kProbe, kConj), state);
    state = loss_channel(state, kConj, config.det_eta);

    OutputMoments out;
    out.mean_c = mode_mean_photon(state, kConj);
    out.var_c = mode_photon_variance(state, kConj);
    out.second_c = out.var_c + out.mean_c * out.mean_c;
    out.mean_p = mode_mean_photon(state, kProbe);
    out.var_p = mode_photon_variance(state, kProbe);
    out.fano_c = out.mean_c > 0.0 ? out.var_c / out.mean_c : kNan;
    return out;
}

OutputMoments closed_form_moments(double gain, double alpha2, double phi) {
    if (gain < 1.0) {
        fail("invalid_config", "closed_form_moments: gain must be >= 1");
    }
    if (alpha2 < 0.0) {
        fail("invalid_config", "closed_form_moments: alpha2 must be >= 0");
    }
    const double cos2 = std::cos(phi) * std::cos(phi);
    const double w = 4.0 * gain * (gain - 1.0) * cos2;

    OutputMoments out;
    out.mean_c = w * alpha2;
    out.second_c = out.mean_c * (1.0 + out.mean_c);
    out.var_c = out.mean_c * (1.0 + 2.0 * w);
    out.mean_p = kNan;
    out.var_p = kNan;
    out.fano_c = out.mean_c > 0.0 ? out.var_c / out.mean_c : kNan;
    return out;
}

double closed_form_variance_identity(double gain, double alpha2, double phi) {
    if (alpha2 <= 0.0) {
        fail("invalid_argument",
             "closed_form_variance_identity: alpha2 must be > 0 for this form");
    }
    const double mean_c = closed_form_moments(gain, alpha2, phi).mean_c;
    return mean_c * (1.0 + 2.0 / alpha2 * mean_c);
}

namespace {

double mean_c_at(const InterferometerConfig& config, double phi) {
    return run_exact(config, phi).mean_c;
}

}  // namespace

double phase_sensitivity(const InterferometerConfig& config, double phi,
                         const SensitivityOptions& options) {
    validate_config(config);
    const double h = options.step;
    if (h <= 0.0) {
        fail("invalid_argument", "phase_sensitivity: step must be > 0");
    }

    const double f_plus = mean_c_at(config, phi + h);
    const double f_minus = mean_c_at(config, phi - h);
    const double f_plus_half = mean_c_at(config, phi + h / 2.0);
    const double f_minus_half = mean_c_at(config, phi - h / 2.0);
    const double f0 = mean_c_at(config, phi);

    const double d_coarse = (f_plus - f_minus) / (2.0 * h);
    const double d_fine = (f_plus_half - f_minus_half) / h;
    const double deriv = (4.0 * d_fine - d_coarse) / 3.0;  // one Richardson level

    // Stationary-point guard: compare against both the amplitude scale and a
    // curvature-based floor h*|f''|, which is what separates a genuine fringe
    // extremum from a merely small slope nearby.
    const double curvature = std::abs(f_plus - 2.0 * f0 + f_minus) / (h * h);
    const double threshold =
        std::max(1e-12 * std::max(1.0, std::abs(f0)), 1e-3 * h * curvature);
    if (std::abs(deriv) <= threshold) {
        fail("stationary_point", "phase_sensitivity: undefined sensitivity here (fringe "
                                 "extremum at phi = " +
                                     std::to_string(phi) + ")");
    }

    const double var = run_exact(config, phi).var_c;
    return std::sqrt(std::max(var, 0.0)) / std::abs(deriv);
}

OptimalSensitivity optimal_sensitivity(const InterferometerConfig& config) {
    validate_config(config);
    constexpr double kDelta = 1e-6;
    constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

    const double pi_half = std::acos(-1.0) / 2.0;
    double lo = kDelta;
    double hi = pi_half - kDelta;

    auto eval = [&](double phi) {
        try {
            return phase_sensitivity(config, phi);
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    for (int iter = 0; iter < 120 && hi - lo > 1e-10; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = eval(x2);
        }
    }
    const double phi_star = 0.5 * (lo + hi);
    const double dphi = eval(phi_star);
    if (!std::isfinite(dphi)) {
        fail("stationary_point", "optimal_sensitivity: sensitivity undefined across the "
                                 "search interval (no usable fringe slope)");
    }
    return {phi_star, dphi};
}

double linear_baseline(double n_phase_sensing, int passes) {
    if (n_phase_sensing <= 0.0) {
        fail("invalid_argument", "linear_baseline: photon number must be > 0");
    }
    if (passes < 1) {
        fail("invalid_argument", "linear_baseline: passes must be >= 1");
    }
    return 1.0 / (passes * std::sqrt(n_phase_sensing));
}

double phase_sensing_photons(const InterferometerConfig& config) {
    return config.phase_sensing == PhaseSensing::seed_photons ? config.alpha2
                                                              : config.g1 * config.alpha2;
}

double snr_enhancement(const InterferometerConfig& config) {
    validate_config(config);
    if (config.g1 != config.g2) {
        fail("unequal_gains", "snr_enhancement: defined for equal gains only");
    }
    const int passes = config.double_pass ? 2 : 1;
    const double sql = linear_baseline(phase_sensing_photons(config), passes);
    return sql / optimal_sensitivity(config).dphi_min;
}

std::vector<FanoPoint> fano_profile(const InterferometerConfig& config,
                                    const std::vector<double>& phis) {
    validate_config(config);
    std::vector<FanoPoint> profile;
    profile.reserve(phis.size());
    for (double phi : phis) {
        const OutputMoments m = run_exact(config, phi);
        FanoPoint point;
        point.phi = phi;
        point.defined = m.mean_c > 0.0;
        point.fano = point.defined ? m.var_c / m.mean_c : kNan;
        profile.push_back(point);
    }
    return profile;
}

}  // namespace nli
