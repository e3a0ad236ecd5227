#pragma once

#include <cstdint>
#include <vector>

namespace nli {

// Double-pass single-amplifier SU(1,1) interferometer: parametric amplifier
// (gain g1) -> probe phase shift -> internal losses -> second amplifier pass
// (gain g2) -> conjugate detection. With double_pass = true the probe
// traverses the phase element twice, so the total interferometric phase is
// 2*phi while all results are reported against the single-pass phi.

/// Which photon number counts as "phase sensing" when comparing against a
/// coherent-state interferometer: the bare seed |alpha|^2 or the amplified
/// probe g1*|alpha|^2 circulating per pass.
enum class PhaseSensing { seed_photons, amplified_probe };

struct InterferometerConfig {
    double g1 = 2.0;          // first-pass intensity gain, >= 1
    double g2 = 2.0;          // second-pass intensity gain, >= 1
    double alpha2 = 100.0;    // probe seed mean photon number |alpha|^2
    double pump_phase = 0.0;  // radians, same for both passes
    double probe_eta = 1.0;   // internal transmission between passes
    double conj_eta = 1.0;
    double det_eta = 1.0;     // detection efficiency on the conjugate
    bool double_pass = true;
    PhaseSensing phase_sensing = PhaseSensing::seed_photons;
};

/// Throws Error("invalid_config") on gains < 1, efficiencies outside [0,1]
/// or alpha2 < 0.
void validate_config(const InterferometerConfig& config);

/// Conjugate photon-number statistics (probe as diagnostics). fano_c is
/// var_c/mean_c, NaN where mean_c vanishes.
struct OutputMoments {
    double mean_c = 0;
    double second_c = 0;
    double var_c = 0;
    double mean_p = 0;
    double var_p = 0;
    double fano_c = 0;
};

/// Exact Gaussian-model moments for the full circuit at single-pass phase phi.
OutputMoments run_exact(const InterferometerConfig& config, double phi);

/// Asymptotic (|alpha|^2 >> 1) closed forms for equal gains and no loss:
///   mean_c   = 4G(G-1) alpha2 cos^2(phi)
///   second_c = mean_c (1 + mean_c)
///   var_c    = mean_c (1 + 8G(G-1) cos^2(phi))
/// Probe diagnostics and fano are NaN here; only the conjugate forms are
/// defined by this approximation.
OutputMoments closed_form_moments(double gain, double alpha2, double phi);

/// Algebraically equivalent route to the closed-form variance,
/// mean_c (1 + 2 mean_c / alpha2). Throws on alpha2 = 0.
double closed_form_variance_identity(double gain, double alpha2, double phi);

struct SensitivityOptions {
    double step = 1e-5;  // central-difference step, radians
};

/// Error-propagation phase uncertainty sqrt(var_c) / |d mean_c / d phi| per
/// single-pass radian. The derivative is a Richardson-extrapolated central
/// difference; at fringe extrema (derivative indistinguishable from zero at
/// working precision) throws Error("stationary_point").
double phase_sensitivity(const InterferometerConfig& config, double phi,
                         const SensitivityOptions& options = {});

struct OptimalSensitivity {
    double phi_star = 0;
    double dphi_min = 0;
};

/// Golden-section minimization of phase_sensitivity over
/// phi in (1e-6, pi/2 - 1e-6).
OptimalSensitivity optimal_sensitivity(const InterferometerConfig& config);

/// Standard quantum limit of a coherent-state interferometer whose sensing
/// beam makes `passes` passes through the phase element: 1/(passes*sqrt(n)).
double linear_baseline(double n_phase_sensing, int passes);

/// Phase-sensing photon number under the configured convention.
double phase_sensing_photons(const InterferometerConfig& config);

/// linear_baseline(N_ps, passes) / optimal_sensitivity(config).dphi_min for
/// a like-for-like pass count. Requires g1 == g2.
double snr_enhancement(const InterferometerConfig& config);

struct FanoPoint {
    double phi = 0;
    double fano = 0;
    bool defined = false;  // false at exact nulls, where fano is left NaN
};

/// var_c/mean_c across the supplied phases; null points flagged rather than
/// dropped so output length matches input.
std::vector<FanoPoint> fano_profile(const InterferometerConfig& config,
                                    const std::vector<double>& phis);

}  // namespace nli
