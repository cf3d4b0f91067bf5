// pauli.hpp — Pauli-string × environment-operator decomposition of joint
// unitaries and per-weight amplitude spectra
//
// Basis: sigma^0 = I, sigma^1 = sigma_x, sigma^2 = sigma_y, sigma^3 = sigma_z
// (Hermitian sigma_y; component norms are independent of that phase choice).

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "declab/evolution.hpp"
#include "declab/model.hpp"

namespace declab::pauli {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct PauliString {
    std::vector<std::uint8_t> labels;  // one entry per qubit, values 0..3

    int n_qubits() const { return static_cast<int>(labels.size()); }
    // Number of non-identity factors.
    int weight() const;
    // Digits in qubit order, e.g. "030" for sigma_z on the middle of three qubits.
    std::string base4() const;
    // Dense 2^n × 2^n matrix, qubit 0 as the most significant factor.
    Matrix matrix() const;

    bool operator==(const PauliString& other) const = default;
};

PauliString pauli_string_from_index(std::uint64_t index, int n_qubits);
bool commutes(const PauliString& a, const PauliString& b);

// One term of U = Σ_k sigma^k ⊗ E_k together with its action on the initial
// environment state. Environment vectors are unnormalized and in general not
// orthogonal across components; nothing here assumes otherwise.
struct ErrorComponent {
    PauliString string;
    Matrix env_operator;                     // E_k
    Vector env_vector;                       // E_k |e_init>
    double norm = 0.0;                       // ‖env_vector‖
    std::optional<Vector> normalized_vector; // present when norm > 0
};

// All 4^n components of the operator-level decomposition
// E_k = 2^{-n} Tr_qubits[(sigma^k ⊗ I) U]. Exact for any U, unitary or not.
std::vector<ErrorComponent> pauli_components(const Matrix& u, const models::HilbertSpec& space,
                                             const Vector& env_init);
std::vector<ErrorComponent> pauli_components(const evolution::Propagator& u,
                                             const models::HilbertSpec& space,
                                             const Vector& env_init);

// ‖U − Σ_k sigma^k ⊗ E_k‖_F; pure roundoff for a correct decomposition.
double reconstruction_residual(const std::vector<ErrorComponent>& components, const Matrix& u);

// ‖Σ_k E_k† E_k − I_env‖_F; ≤ 1e-10 when the source was unitary.
double completeness_residual(const std::vector<ErrorComponent>& components);

// Per-weight aggregate amplitudes A(m) = sqrt(Σ_{weight=m} norm²) at one time.
struct WeightSpectrum {
    double time = 0.0;
    std::map<int, double> amplitudes;  // m -> A(m)
    std::map<int, double> max_norms;   // m -> largest single component norm
    std::map<int, int> counts;         // m -> strings with norm above numerical zero
};

// Aggregates a complete component list. When `source_unitary` is set the
// completeness identity Σ_m A(m)² = 1 is asserted to 1e-9; pass false for
// truncated-series inputs.
WeightSpectrum weight_spectrum(const std::vector<ErrorComponent>& components, double time,
                               bool source_unitary = true);

// Convex combination of spectra (amplitudes combine in quadrature), for
// thermal-like mixtures of initial environment states.
WeightSpectrum mix_spectra(const std::vector<std::pair<double, WeightSpectrum>>& weighted);

} // namespace declab::pauli
