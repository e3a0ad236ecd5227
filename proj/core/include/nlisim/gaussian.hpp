#pragma once

#include <Eigen/Dense>

#include <complex>

namespace nli {

// Two-mode (and small multi-mode) Gaussian state engine in the quadrature
// representation. Conventions, fixed project-wide:
//   * quadrature ordering (x1, p1, x2, p2, ...): 2x2 blocks per mode,
//   * vacuum covariance = identity (hbar = 2 units), so a coherent state
//     with amplitude alpha has mean (2 Re alpha, 2 Im alpha) on its mode
//     and photon-number variance equal to |alpha|^2.

/// Mean quadrature vector plus covariance matrix for `num_modes` bosonic
/// modes. Any physical state must have symmetric cov with all symplectic
/// eigenvalues >= 1.
struct GaussianState {
    int num_modes = 0;
    Eigen::VectorXd mean;  // length 2*num_modes
    Eigen::MatrixXd cov;   // 2*num_modes x 2*num_modes, symmetric
};

/// Linear quadrature transform: state -> (matrix * mean + displacement,
/// matrix * cov * matrix^T). Gaussian unitaries satisfy S Omega S^T = Omega.
struct SymplecticOp {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd displacement;

    int num_modes() const { return static_cast<int>(matrix.rows()) / 2; }
};

/// Standard symplectic form: block-diagonal 2x2 blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int num_modes);

/// max |S Omega S^T - Omega|; < 1e-12 for every op built here.
double symplectic_defect(const SymplecticOp& op);

/// Absolute values of the eigenvalues of i*Omega*cov, sorted ascending.
/// Physical states have all of them >= 1 (up to numerical tolerance).
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Throws Error("invalid_state") if cov is asymmetric beyond 1e-12 or a
/// symplectic eigenvalue falls below 1 - 1e-9.
void validate_state(const GaussianState& state);

GaussianState vacuum_state(int num_modes);

/// Coherent displacement of a single mode; covariance untouched.
GaussianState displace(const GaussianState& state, int mode, std::complex<double> amp);

SymplecticOp identity_op(int num_modes);

/// Phase rotation of one mode's (x, p) block by phi.
SymplecticOp phase_shift(double phi, int mode, int num_modes = 2);

/// Two-mode squeezer with intensity gain G >= 1 and pump phase theta:
/// a -> sqrt(G) a + e^{i theta} sqrt(G-1) b^dag (and symmetrically for b),
/// with G = cosh^2 r. Throws on gain < 1.
SymplecticOp two_mode_squeezer(double gain, double pump_phase, int mode_a, int mode_b,
                               int num_modes = 2);

/// a after b (matrix product, displacements chained).
SymplecticOp compose(const SymplecticOp& a, const SymplecticOp& b);

GaussianState apply(const SymplecticOp& op, const GaussianState& state);

/// Beamsplitter-to-vacuum loss with transmission eta in [0, 1]: mean block
/// scaled by sqrt(eta), covariance block -> eta*block + (1-eta)*I, cross
/// blocks scaled by sqrt(eta).
GaussianState loss_channel(const GaussianState& state, int mode, double eta);

/// <n> = (tr sigma_m - 2)/4 + |d_m|^2/4 for the mode's 2x2 block and mean.
double mode_mean_photon(const GaussianState& state, int mode);

/// <Delta n^2> = (tr sigma_m^2 - 2)/8 + d_m^T sigma_m d_m / 4
/// (Gaussian fourth-moment reduction).
double mode_photon_variance(const GaussianState& state, int mode);

/// <n^2> = variance + mean^2.
double mode_second_moment(const GaussianState& state, int mode);

}  // namespace nli
