#include "nlisim/gaussian.hpp"

#include "nlisim/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace nli {

namespace {

void check_mode(const GaussianState& state, int mode, const char* where) {
    if (mode < 0 || mode >= state.num_modes) {
        fail("index_out_of_range",
             std::string(where) + ": mode " + std::to_string(mode) + " out of range for " +
                 std::to_string(state.num_modes) + " modes");
    }
}

}  // namespace

Eigen::MatrixXd symplectic_form(int num_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
    for (int m = 0; m < num_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

double symplectic_defect(const SymplecticOp& op) {
    const Eigen::MatrixXd omega = symplectic_form(op.num_modes());
    return (op.matrix * omega * op.matrix.transpose() - omega).cwiseAbs().maxCoeff();
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows());
    const Eigen::MatrixXcd m =
        std::complex<double>(0, 1) * symplectic_form(n / 2).cast<std::complex<double>>() *
        cov.cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    Eigen::VectorXd abs_vals = solver.eigenvalues().cwiseAbs();
    std::sort(abs_vals.data(), abs_vals.data() + abs_vals.size());
    return abs_vals;
}

void validate_state(const GaussianState& state) {
    if (state.num_modes < 1 || state.mean.size() != 2 * state.num_modes ||
        state.cov.rows() != 2 * state.num_modes || state.cov.cols() != 2 * state.num_modes) {
        fail("invalid_state", "inconsistent dimensions");
    }
    const double asym = (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        fail("invalid_state", "covariance asymmetry " + std::to_string(asym) + " exceeds 1e-12");
    }
    const Eigen::VectorXd nu = symplectic_eigenvalues(state.cov);
    if (nu(0) < 1.0 - 1e-9) {
        fail("invalid_state",
             "symplectic eigenvalue " + std::to_string(nu(0)) + " violates uncertainty bound");
    }
}

GaussianState vacuum_state(int num_modes) {
    if (num_modes < 1) {
        fail("invalid_argument", "vacuum_state: num_modes must be >= 1");
    }
    GaussianState state;
    state.num_modes = num_modes;
    state.mean = Eigen::VectorXd::Zero(2 * num_modes);
    state.cov = Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes);
    return state;
}

GaussianState displace(const GaussianState& state, int mode, std::complex<double> amp) {
    check_mode(state, mode, "displace");
    GaussianState out = state;
    out.mean(2 * mode) += 2.0 * amp.real();
    out.mean(2 * mode + 1) += 2.0 * amp.imag();
    return out;
}

SymplecticOp identity_op(int num_modes) {
    return {Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
            Eigen::VectorXd::Zero(2 * num_modes)};
}

SymplecticOp phase_shift(double phi, int mode, int num_modes) {
    SymplecticOp op = identity_op(num_modes);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    op.matrix(2 * mode, 2 * mode) = c;
    op.matrix(2 * mode, 2 * mode + 1) = -s;
    op.matrix(2 * mode + 1, 2 * mode) = s;
    op.matrix(2 * mode + 1, 2 * mode + 1) = c;
    return op;
}

SymplecticOp two_mode_squeezer(double gain, double pump_phase, int mode_a, int mode_b,
                               int num_modes) {
    if (gain < 1.0) {
        fail("invalid_argument", "two_mode_squeezer: gain must be >= 1");
    }
    if (mode_a == mode_b || mode_a < 0 || mode_b < 0 || mode_a >= num_modes ||
        mode_b >= num_modes) {
        fail("index_out_of_range", "two_mode_squeezer: bad mode pair");
    }
    const double c = std::sqrt(gain);
    const double s = std::sqrt(gain - 1.0);
    // Reflection-type cross block: x gains cos(theta) x' + sin(theta) p',
    // p gains sin(theta) x' - cos(theta) p'.
    Eigen::Matrix2d cross;
    cross << std::cos(pump_phase), std::sin(pump_phase),
             std::sin(pump_phase), -std::cos(pump_phase);

    SymplecticOp op = identity_op(num_modes);
    op.matrix.block<2, 2>(2 * mode_a, 2 * mode_a) = c * Eigen::Matrix2d::Identity();
    op.matrix.block<2, 2>(2 * mode_b, 2 * mode_b) = c * Eigen::Matrix2d::Identity();
    op.matrix.block<2, 2>(2 * mode_a, 2 * mode_b) = s * cross;
    op.matrix.block<2, 2>(2 * mode_b, 2 * mode_a) = s * cross;
    return op;
}

SymplecticOp compose(const SymplecticOp& a, const SymplecticOp& b) {
    if (a.matrix.cols() != b.matrix.rows()) {
        fail("dimension_mismatch", "compose: operand sizes differ");
    }
    return {a.matrix * b.matrix, a.matrix * b.displacement + a.displacement};
}

GaussianState apply(const SymplecticOp& op, const GaussianState& state) {
    if (op.matrix.cols() != state.mean.size()) {
        fail("dimension_mismatch", "apply: op and state sizes differ");
    }
    GaussianState out;
    out.num_modes = state.num_modes;
    out.mean = op.matrix * state.mean + op.displacement;
    out.cov = op.matrix * state.cov * op.matrix.transpose();
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();  // kill roundoff asymmetry
    return out;
}

GaussianState loss_channel(const GaussianState& state, int mode, double eta) {
    check_mode(state, mode, "loss_channel");
    if (eta < 0.0 || eta > 1.0) {
        fail("invalid_argument", "loss_channel: eta must lie in [0, 1]");
    }
    const double root = std::sqrt(eta);
    GaussianState out = state;
    out.mean.segment<2>(2 * mode) *= root;
    // cross blocks pick up sqrt(eta), the mode block eta; then add vacuum.
    out.cov.middleRows<2>(2 * mode) *= root;
    out.cov.middleCols<2>(2 * mode) *= root;
    out.cov.block<2, 2>(2 * mode, 2 * mode) += (1.0 - eta) * Eigen::Matrix2d::Identity();
    return out;
}

double mode_mean_photon(const GaussianState& state, int mode) {
    check_mode(state, mode, "mode_mean_photon");
    const Eigen::Matrix2d sigma = state.cov.block<2, 2>(2 * mode, 2 * mode);
    const Eigen::Vector2d d = state.mean.segment<2>(2 * mode);
    return (sigma.trace() - 2.0) / 4.0 + d.squaredNorm() / 4.0;
}

double mode_photon_variance(const GaussianState& state, int mode) {
    check_mode(state, mode, "mode_photon_variance");
    const Eigen::Matrix2d sigma = state.cov.block<2, 2>(2 * mode, 2 * mode);
    const Eigen::Vector2d d = state.mean.segment<2>(2 * mode);
    return ((sigma * sigma).trace() - 2.0) / 8.0 + d.dot(sigma * d) / 4.0;
}

double mode_second_moment(const GaussianState& state, int mode) {
    const double mean = mode_mean_photon(state, mode);
    return mode_photon_variance(state, mode) + mean * mean;
}

}  // namespace nli
