#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace nli {

// Brute-force truncated-Fock simulation of the same two-mode optical
// circuit. Used as the independent verification oracle for the Gaussian
// engine at small photon numbers; intentionally shares no code with it.

enum class FockMode { probe, conj };

/// Two-mode state with a common per-mode cutoff. amplitudes indexed
/// (n_probe, n_conj) row-major: idx = n_probe * n_max + n_conj.
struct FockState {
    int n_max = 0;
    Eigen::VectorXcd amp;

    std::complex<double> at(int n_probe, int n_conj) const {
        return amp(static_cast<Eigen::Index>(n_probe) * n_max + n_conj);
    }
};

/// Probe in a truncated, renormalized coherent state; conjugate in vacuum.
/// Requires n_max >= 8 and |alpha|^2 <= n_max/4; throws Error("truncation")
/// when the truncation tail exceeds max_tail.
FockState coherent_vacuum(std::complex<double> alpha, int n_max, double max_tail = 1e-10);

double state_norm(const FockState& state);

/// Probability mass in the top two levels of either mode; the validity
/// indicator for a truncated run.
double truncation_tail(const FockState& state);

/// Marginal photon-number distribution of one mode.
std::vector<double> number_marginal(const FockState& state, FockMode mode);

struct PhotonMoments {
    double mean = 0;
    double second = 0;
    double variance = 0;
};

PhotonMoments photon_moments(const FockState& state, FockMode mode);

/// exp(r (e^{i theta} a^dag b^dag - e^{-i theta} a b)) with r = arccosh(sqrt(G)),
/// exponentiated exactly on the truncated space. The generator never couples
/// states of different n_probe - n_conj, so the unitary is stored and applied
/// per photon-number-difference chain; the result is unitary to roundoff.
class TmsUnitary {
public:
    TmsUnitary(double gain, double pump_phase, int n_max);

    FockState apply(const FockState& state) const;

    /// Full dense matrix, row index = output (n_probe, n_conj). Intended for
    /// small n_max only (tests); dimension is n_max^2.
    Eigen::MatrixXcd dense() const;

    int n_max() const { return n_max_; }
    double gain() const { return gain_; }

private:
    struct Chain {
        int diff = 0;                 // n_probe - n_conj along this chain
        Eigen::VectorXd eigenvalues;  // of the real tridiagonal form
        Eigen::MatrixXd eigenvectors;
        Eigen::VectorXcd phases;      // diagonal unitary restoring the complex form
    };

    const Chain& chain_for(int diff) const;

    int n_max_;
    double gain_;
    double pump_phase_;
    std::vector<Chain> chains_;  // diff = -(n_max-1) .. n_max-1
};

TmsUnitary tms_unitary(double gain, double pump_phase, int n_max);

/// Diagonal unitary e^{i n phi} on the selected mode's number index.
class PhaseUnitary {
public:
    PhaseUnitary(double phi, FockMode mode, int n_max);

    FockState apply(const FockState& state) const;
    Eigen::VectorXcd diagonal() const;

private:
    double phi_;
    FockMode mode_;
    int n_max_;
};

PhaseUnitary phase_unitary(double phi, FockMode mode, int n_max);

}  // namespace nli
