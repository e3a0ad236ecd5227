#include "nlisim/fock.hpp"

#include "nlisim/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace nli {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_state(const FockState& state, const char* where) {
    if (state.n_max < 1 ||
        state.amp.size() != static_cast<Eigen::Index>(state.n_max) * state.n_max) {
        fail("invalid_state", std::string(where) + ": inconsistent Fock state");
    }
}

}  // namespace

FockState coherent_vacuum(std::complex<double> alpha, int n_max, double max_tail) {
    if (n_max < 8) {
        fail("invalid_argument", "coherent_vacuum: n_max must be >= 8");
    }
    const double mean_photon = std::norm(alpha);
    if (mean_photon > n_max / 4.0) {
        fail("invalid_argument",
             "coherent_vacuum: |alpha|^2 = " + std::to_string(mean_photon) +
                 " exceeds n_max/4 validity bound");
    }
    FockState state;
    state.n_max = n_max;
    state.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max) * n_max);
    // c_n = alpha^n / sqrt(n!) up to normalization, built by recurrence.
    std::complex<double> c = 1.0;
    double norm2 = 0.0;
    for (int n = 0; n < n_max; ++n) {
        state.amp(static_cast<Eigen::Index>(n) * n_max) = c;
        norm2 += std::norm(c);
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    state.amp /= std::sqrt(norm2);
    const double tail = truncation_tail(state);
    if (tail > max_tail) {
        fail("truncation", "coherent_vacuum: truncation tail " + std::to_string(tail) +
                               " exceeds threshold");
    }
    return state;
}

double state_norm(const FockState& state) {
    check_state(state, "state_norm");
    return state.amp.norm();
}

double truncation_tail(const FockState& state) {
    check_state(state, "truncation_tail");
    double tail = 0.0;
    const int n = state.n_max;
    for (int p = 0; p < n; ++p) {
        for (int c = 0; c < n; ++c) {
            if (p >= n - 2 || c >= n - 2) {
                tail += std::norm(state.at(p, c));
            }
        }
    }
    return tail;
}

std::vector<double> number_marginal(const FockState& state, FockMode mode) {
    check_state(state, "number_marginal");
    const int n = state.n_max;
    std::vector<double> prob(n, 0.0);
    for (int p = 0; p < n; ++p) {
        for (int c = 0; c < n; ++c) {
            prob[mode == FockMode::probe ? p : c] += std::norm(state.at(p, c));
        }
    }
    return prob;
}

PhotonMoments photon_moments(const FockState& state, FockMode mode) {
    const std::vector<double> prob = number_marginal(state, mode);
    PhotonMoments m;
    for (int n = 0; n < static_cast<int>(prob.size()); ++n) {
        m.mean += n * prob[n];
        m.second += static_cast<double>(n) * n * prob[n];
    }
    m.variance = m.second - m.mean * m.mean;
    return m;
}

TmsUnitary::TmsUnitary(double gain, double pump_phase, int n_max)
    : n_max_(n_max), gain_(gain), pump_phase_(pump_phase) {
    if (gain < 1.0) {
        fail("invalid_argument", "tms_unitary: gain must be >= 1");
    }
    if (n_max < 2) {
        fail("invalid_argument", "tms_unitary: n_max must be >= 2");
    }
    const double r = std::acosh(std::sqrt(gain));

    // One chain per photon-number difference d = n_probe - n_conj. Along a
    // chain the generator is tridiagonal with zero diagonal; a diagonal
    // phase similarity maps it to a real symmetric tridiagonal matrix whose
    // eigensystem gives the exact unitary.
    chains_.reserve(2 * n_max - 1);
    for (int d = -(n_max - 1); d <= n_max - 1; ++d) {
        Chain chain;
        chain.diff = d;
        const int len = n_max - std::abs(d);
        chain.phases = Eigen::VectorXcd(len);
        const std::complex<double> step = kI * std::exp(kI * pump_phase);
        std::complex<double> phase = 1.0;
        for (int k = 0; k < len; ++k) {
            chain.phases(k) = phase;
            phase *= step;
        }
        if (len == 1) {
            chain.eigenvalues = Eigen::VectorXd::Zero(1);
            chain.eigenvectors = Eigen::MatrixXd::Ones(1, 1);
            chains_.push_back(std::move(chain));
            continue;
        }
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(len);
        Eigen::VectorXd off(len - 1);
        for (int k = 0; k + 1 < len; ++k) {
            // raising element <k+1| a^dag b^dag |k> with occupations
            // (k + |d|, k) or (k, k + |d|); symmetric in the two modes.
            off(k) = r * std::sqrt(static_cast<double>(k + 1) *
                                   static_cast<double>(k + 1 + std::abs(d)));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, off);
        if (solver.info() != Eigen::Success) {
            fail("numerical", "tms_unitary: tridiagonal eigensolve failed");
        }
        chain.eigenvalues = solver.eigenvalues();
        chain.eigenvectors = solver.eigenvectors();
        chains_.push_back(std::move(chain));
    }
}

const TmsUnitary::Chain& TmsUnitary::chain_for(int diff) const {
    return chains_[static_cast<std::size_t>(diff + n_max_ - 1)];
}

FockState TmsUnitary::apply(const FockState& state) const {
    check_state(state, "TmsUnitary::apply");
    if (state.n_max != n_max_) {
        fail("dimension_mismatch", "TmsUnitary::apply: cutoff mismatch");
    }
    FockState out;
    out.n_max = n_max_;
    out.amp = Eigen::VectorXcd::Zero(state.amp.size());

    for (const Chain& chain : chains_) {
        const int len = static_cast<int>(chain.phases.size());
        const int d = chain.diff;
        // Chain position k holds (n_probe, n_conj) = (k + d, k) for d >= 0
        // and (k, k - d) otherwise.
        auto index_at = [&](int k) {
            const int n_conj = d >= 0 ? k : k - d;
            const int n_probe = n_conj + d;
            return static_cast<Eigen::Index>(n_probe) * n_max_ + n_conj;
        };
        Eigen::VectorXcd v(len);
        for (int k = 0; k < len; ++k) {
            v(k) = state.amp(index_at(k));
        }
        // exp(K) = Ph Q e^{-i Lambda} Q^T Ph^dag on the chain; the real
        // eigenvector matrix multiplies real and imaginary parts separately.
        v = chain.phases.conjugate().cwiseProduct(v);
        Eigen::VectorXd wr = chain.eigenvectors.transpose() * v.real();
        Eigen::VectorXd wi = chain.eigenvectors.transpose() * v.imag();
        Eigen::VectorXcd w = wr + kI * wi;
        w = ((-kI * chain.eigenvalues.array()).exp() * w.array()).matrix();
        wr = chain.eigenvectors * w.real();
        wi = chain.eigenvectors * w.imag();
        v = chain.phases.cwiseProduct((wr + kI * wi).eval());
        for (int k = 0; k < len; ++k) {
            out.amp(index_at(k)) = v(k);
        }
    }
    return out;
}

Eigen::MatrixXcd TmsUnitary::dense() const {
    const Eigen::Index dim = static_cast<Eigen::Index>(n_max_) * n_max_;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (const Chain& chain : chains_) {
        const int len = static_cast<int>(chain.phases.size());
        const int d = chain.diff;
        auto index_at = [&](int k) {
            const int n_conj = d >= 0 ? k : k - d;
            const int n_probe = n_conj + d;
            return static_cast<Eigen::Index>(n_probe) * n_max_ + n_conj;
        };
        const Eigen::MatrixXcd evecs = chain.eigenvectors.cast<std::complex<double>>();
        const Eigen::MatrixXcd block =
            chain.phases.asDiagonal() *
            (evecs * (-kI * chain.eigenvalues.array()).exp().matrix().asDiagonal() *
             evecs.transpose()) *
            chain.phases.conjugate().asDiagonal();
        for (int row = 0; row < len; ++row) {
            for (int col = 0; col < len; ++col) {
                u(index_at(row), index_at(col)) = block(row, col);
            }
        }
    }
    return u;
}

TmsUnitary tms_unitary(double gain, double pump_phase, int n_max) {
    return TmsUnitary(gain, pump_phase, n_max);
}

PhaseUnitary::PhaseUnitary(double phi, FockMode mode, int n_max)
    : phi_(phi), mode_(mode), n_max_(n_max) {
    if (n_max < 1) {
        fail("invalid_argument", "phase_unitary: n_max must be >= 1");
    }
}

FockState PhaseUnitary::apply(const FockState& state) const {
    check_state(state, "PhaseUnitary::apply");
    if (state.n_max != n_max_) {
        fail("dimension_mismatch", "PhaseUnitary::apply: cutoff mismatch");
    }
    FockState out = state;
    for (int p = 0; p < n_max_; ++p) {
        for (int c = 0; c < n_max_; ++c) {
            const int n = mode_ == FockMode::probe ? p : c;
            out.amp(static_cast<Eigen::Index>(p) * n_max_ + c) *= std::exp(kI * (phi_ * n));
        }
    }
    return out;
}

Eigen::VectorXcd PhaseUnitary::diagonal() const {
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(n_max_) * n_max_);
    for (int p = 0; p < n_max_; ++p) {
        for (int c = 0; c < n_max_; ++c) {
            const int n = mode_ == FockMode::probe ? p : c;
            diag(static_cast<Eigen::Index>(p) * n_max_ + c) = std::exp(kI * (phi_ * n));
        }
    }
    return diag;
}

PhaseUnitary phase_unitary(double phi, FockMode mode, int n_max) {
    return PhaseUnitary(phi, mode, n_max);
}

}  // namespace nli
