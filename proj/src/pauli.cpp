// pauli.cpp — Component extraction via structured partial traces

#include "declab/pauli.hpp"

#include <cmath>

namespace declab::pauli {

using complexd = std::complex<double>;

namespace {
constexpr double kNumericalZero = 1e-14;
} // namespace

int PauliString::weight() const {
    int w = 0;
    for (auto l : labels) {
        if (l != 0) ++w;
    }
    return w;
}

std::string PauliString::base4() const {
    std::string s;
    s.reserve(labels.size());
    for (auto l : labels) s.push_back(static_cast<char>('0' + l));
    return s;
}

Matrix PauliString::matrix() const {
    Matrix out = Matrix::Identity(1, 1);
    for (auto l : labels) {
        switch (l) {
            case 0: out = ops::kron(out, ops::identity(2)); break;
            case 1: out = ops::kron(out, ops::sigma_x()); break;
            case 2: out = ops::kron(out, ops::sigma_y()); break;
            case 3: out = ops::kron(out, ops::sigma_z()); break;
            default: throw ValidationError("Pauli label out of range: " + std::to_string(l));
        }
    }
    return out;
}

PauliString pauli_string_from_index(std::uint64_t index, int n_qubits) {
    PauliString s;
    s.labels.resize(static_cast<size_t>(n_qubits));
    // Base-4 digits, qubit 0 as the most significant digit.
    for (int alpha = n_qubits - 1; alpha >= 0; --alpha) {
        s.labels[static_cast<size_t>(alpha)] = static_cast<std::uint8_t>(index % 4);
        index /= 4;
    }
    return s;
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.labels.size() != b.labels.size()) {
        throw ValidationError("commutes: Pauli strings differ in length");
    }
    int anticommuting = 0;
    for (size_t i = 0; i < a.labels.size(); ++i) {
        const auto la = a.labels[i];
        const auto lb = b.labels[i];
        if (la != 0 && lb != 0 && la != lb) ++anticommuting;
    }
    return anticommuting % 2 == 0;
}

namespace {

struct SinglePauliAction {
    // Row c maps to column c ^ flips; value = phase(c).
    int flips = 0;
    complexd phase0{1.0, 0.0};  // value at row bit 0
    complexd phase1{1.0, 0.0};  // value at row bit 1
};

SinglePauliAction action_of(std::uint8_t label) {
    switch (label) {
        case 0: return {0, {1, 0}, {1, 0}};
        case 1: return {1, {1, 0}, {1, 0}};
        case 2: return {1, {0, -1}, {0, 1}};  // sigma_y: [0,-i; i,0]
        case 3: return {0, {1, 0}, {-1, 0}};
        default: throw ValidationError("Pauli label out of range");
    }
}

} // namespace

std::vector<ErrorComponent> pauli_components(const Matrix& u, const models::HilbertSpec& space,
                                             const Vector& env_init) {
    const int n = space.n_qubits;
    const long q_dim = space.qubit_dim();
    const long d_env = space.env_dim();
    if (u.rows() != space.total_dim || u.cols() != space.total_dim) {
        throw ValidationError("pauli_components: unitary dimension does not match space");
    }
    if (env_init.size() != d_env) {
        throw ValidationError("pauli_components: env_init dimension does not match space");
    }
    if (std::abs(env_init.norm() - 1.0) > 1e-12) {
        throw ValidationError("pauli_components: env_init must be normalized");
    }

    const double scale = 1.0 / static_cast<double>(q_dim);
    const std::uint64_t n_components = 1ULL << (2 * n);
    std::vector<ErrorComponent> components;
    components.reserve(n_components);

    for (std::uint64_t idx = 0; idx < n_components; ++idx) {
        PauliString str = pauli_string_from_index(idx, n);

        // sigma^k row c has its single nonzero at column c ^ flip_mask with
        // value Π_alpha phase_alpha(bit of c), so the partial trace
        // E_k = 2^{-n} Tr_q[(sigma^k ⊗ I) U] needs only 2^n row/column pairs.
        long flip_mask = 0;
        std::vector<SinglePauliAction> actions(static_cast<size_t>(n));
        for (int alpha = 0; alpha < n; ++alpha) {
            actions[static_cast<size_t>(alpha)] = action_of(str.labels[static_cast<size_t>(alpha)]);
            if (actions[static_cast<size_t>(alpha)].flips) {
                flip_mask |= 1L << (n - 1 - alpha);  // qubit 0 = most significant bit
            }
        }

        Matrix e_k = Matrix::Zero(d_env, d_env);
        for (long c = 0; c < q_dim; ++c) {
            complexd phase{1.0, 0.0};
            for (int alpha = 0; alpha < n; ++alpha) {
                const bool bit = (c >> (n - 1 - alpha)) & 1L;
                const auto& act = actions[static_cast<size_t>(alpha)];
                phase *= bit ? act.phase1 : act.phase0;
            }
            const long a = c ^ flip_mask;
            e_k.noalias() +=
                std::conj(phase) * u.block(c * d_env, a * d_env, d_env, d_env);
        }
        e_k *= scale;

        ErrorComponent comp;
        comp.string = std::move(str);
        comp.env_vector = e_k * env_init;
        comp.env_operator = std::move(e_k);
        comp.norm = comp.env_vector.norm();
        if (comp.norm > kNumericalZero) {
            comp.normalized_vector = comp.env_vector / comp.norm;
        }
        components.push_back(std::move(comp));
    }
    return components;
}

std::vector<ErrorComponent> pauli_components(const evolution::Propagator& u,
                                             const models::HilbertSpec& space,
                                             const Vector& env_init) {
    return pauli_components(u.matrix, space, env_init);
}

double reconstruction_residual(const std::vector<ErrorComponent>& components, const Matrix& u) {
    if (components.empty()) throw ValidationError("reconstruction_residual: empty component list");
    Matrix sum = Matrix::Zero(u.rows(), u.cols());
    for (const auto& comp : components) {
        sum += ops::kron(comp.string.matrix(), comp.env_operator);
    }
    return (sum - u).norm();
}

double completeness_residual(const std::vector<ErrorComponent>& components) {
    if (components.empty()) throw ValidationError("completeness_residual: empty component list");
    const Eigen::Index d_env = components.front().env_operator.rows();
    Matrix sum = Matrix::Zero(d_env, d_env);
    for (const auto& comp : components) {
        sum.noalias() += comp.env_operator.adjoint() * comp.env_operator;
    }
    return (sum - Matrix::Identity(d_env, d_env)).norm();
}

WeightSpectrum weight_spectrum(const std::vector<ErrorComponent>& components, double time,
                               bool source_unitary) {
    if (components.empty()) {
        throw ValidationError("weight_spectrum: empty component list");
    }
    const int n = components.front().string.n_qubits();
    const std::uint64_t expected = 1ULL << (2 * n);
    if (components.size() != expected) {
        throw ValidationError("weight_spectrum: incomplete component list (" +
                              std::to_string(components.size()) + " of " +
                              std::to_string(expected) + ")");
    }

    WeightSpectrum spectrum;
    spectrum.time = time;
    std::map<int, double> sum_sq;
    for (int m = 0; m <= n; ++m) {
        sum_sq[m] = 0.0;
        spectrum.max_norms[m] = 0.0;
        spectrum.counts[m] = 0;
    }
    for (const auto& comp : components) {
        const int m = comp.string.weight();
        sum_sq[m] += comp.norm * comp.norm;
        spectrum.max_norms[m] = std::max(spectrum.max_norms[m], comp.norm);
        if (comp.norm > kNumericalZero) ++spectrum.counts[m];
    }
    double total = 0.0;
    for (const auto& [m, s] : sum_sq) {
        spectrum.amplitudes[m] = std::sqrt(s);
        total += s;
    }
    if (source_unitary && std::abs(total - 1.0) > 1e-9) {
        throw NumericalError("weight spectrum completeness violated: sum A(m)^2 = " +
                             std::to_string(total));
    }
    return spectrum;
}

WeightSpectrum mix_spectra(const std::vector<std::pair<double, WeightSpectrum>>& weighted) {
    if (weighted.empty()) throw ValidationError("mix_spectra: empty input");
    double total_weight = 0.0;
    for (const auto& [w, s] : weighted) {
        if (w < 0.0) throw ValidationError("mix_spectra: negative weight");
        total_weight += w;
    }
    if (total_weight <= 0.0) throw ValidationError("mix_spectra: weights sum to zero");

    WeightSpectrum out;
    out.time = weighted.front().second.time;
    for (const auto& [w, s] : weighted) {
        for (const auto& [m, a] : s.amplitudes) {
            out.amplitudes[m] += (w / total_weight) * a * a;
        }
        for (const auto& [m, mx] : s.max_norms) {
            out.max_norms[m] = std::max(out.max_norms[m], mx);
        }
        for (const auto& [m, c] : s.counts) {
            out.counts[m] = std::max(out.counts[m], c);
        }
    }
    for (auto& [m, a] : out.amplitudes) a = std::sqrt(a);
    return out;
}

} // namespace declab::pauli
