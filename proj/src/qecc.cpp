// qecc.cpp — Code construction, syndrome projection, fidelity experiments

#include "declab/qecc.hpp"

#include <cmath>

#include "declab/evolution.hpp"

namespace declab::qecc {

using complexd = std::complex<double>;

namespace {
constexpr double kCodeTol = 1e-12;

PauliString string_of(std::initializer_list<int> labels) {
    PauliString s;
    for (int l : labels) s.labels.push_back(static_cast<std::uint8_t>(l));
    return s;
}

PauliString identity_string(int n) {
    PauliString s;
    s.labels.assign(static_cast<size_t>(n), 0);
    return s;
}

// All weight-1 strings with the given label on one qubit.
std::vector<PauliString> single_qubit_errors(int n, std::initializer_list<int> label_set) {
    std::vector<PauliString> errors;
    for (int q = 0; q < n; ++q) {
        for (int l : label_set) {
            PauliString s = identity_string(n);
            s.labels[static_cast<size_t>(q)] = static_cast<std::uint8_t>(l);
            errors.push_back(std::move(s));
        }
    }
    return errors;
}

void build_recovery(CodeSpec& code) {
    code.recovery_table.clear();
    code.recovery_table.emplace(code.syndrome_of(identity_string(code.n_physical)),
                                identity_string(code.n_physical));
    for (const auto& err : code.correctable_errors) {
        const std::string syndrome = code.syndrome_of(err);
        const auto [it, inserted] = code.recovery_table.emplace(syndrome, err);
        if (!inserted) {
            throw ModelDefinitionError("code '" + code.name + "': errors " + it->second.base4() +
                                       " and " + err.base4() + " share syndrome " + syndrome);
        }
    }
}

Matrix hadamard() {
    Matrix h(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    return h;
}

CodeSpec make_bitflip3() {
    CodeSpec code;
    code.name = "bitflip3";
    code.n_physical = 3;
    code.stabilizer_generators = {string_of({3, 3, 0}), string_of({0, 3, 3})};
    code.logical_zero = Vector::Zero(8);
    code.logical_zero(0) = 1.0;  // |000>
    code.logical_one = Vector::Zero(8);
    code.logical_one(7) = 1.0;  // |111>
    code.unencoded_basis = Matrix::Identity(2, 2);
    code.correctable_errors = single_qubit_errors(3, {1});
    build_recovery(code);
    return code;
}

CodeSpec make_phaseflip3() {
    CodeSpec code;
    code.name = "phaseflip3";
    code.n_physical = 3;
    code.stabilizer_generators = {string_of({1, 1, 0}), string_of({0, 1, 1})};
    code.logical_zero = Vector::Constant(8, 1.0 / std::sqrt(8.0));  // |+++>
    code.logical_one = Vector::Zero(8);                             // |--->
    for (long i = 0; i < 8; ++i) {
        const int parity = __builtin_popcountl(static_cast<unsigned long>(i)) & 1;
        code.logical_one(i) = (parity ? -1.0 : 1.0) / std::sqrt(8.0);
    }
    code.unencoded_basis = hadamard();  // |+>, |->
    code.correctable_errors = single_qubit_errors(3, {3});
    build_recovery(code);
    return code;
}

CodeSpec make_perfect5() {
    CodeSpec code;
    code.name = "perfect5";
    code.n_physical = 5;
    code.stabilizer_generators = {
        string_of({1, 3, 3, 1, 0}),
        string_of({0, 1, 3, 3, 1}),
        string_of({1, 0, 1, 3, 3}),
        string_of({3, 1, 0, 1, 3}),
    };
    // Codespace projector Π (I + S_i)/2 applied to |00000>, then normalized;
    // logical one is X̄ = XXXXX applied to logical zero.
    const long dim = code.code_dim();
    Matrix projector = Matrix::Identity(dim, dim);
    for (const auto& gen : code.stabilizer_generators) {
        projector = projector * 0.5 * (Matrix::Identity(dim, dim) + gen.matrix());
    }
    Vector zero = projector.col(0);
    const double norm = zero.norm();
    if (norm < kCodeTol) throw ModelDefinitionError("perfect5: degenerate codeword projection");
    code.logical_zero = zero / norm;
    PauliString logical_x = string_of({1, 1, 1, 1, 1});
    code.logical_one = logical_x.matrix() * code.logical_zero;
    code.unencoded_basis = Matrix::Identity(2, 2);
    code.correctable_errors = single_qubit_errors(5, {1, 2, 3});
    build_recovery(code);
    return code;
}

} // namespace

std::string CodeSpec::syndrome_of(const PauliString& error) const {
    std::string bits;
    bits.reserve(stabilizer_generators.size());
    for (const auto& gen : stabilizer_generators) {
        bits.push_back(pauli::commutes(gen, error) ? '0' : '1');
    }
    return bits;
}

CodeSpec CodeSpec::make(const std::string& name) {
    CodeSpec code;
    if (name == "bitflip3") {
        code = make_bitflip3();
    } else if (name == "phaseflip3") {
        code = make_phaseflip3();
    } else if (name == "perfect5") {
        code = make_perfect5();
    } else {
        throw ValidationError("unknown code '" + name + "'");
    }
    code.validate();
    return code;
}

void CodeSpec::validate() const {
    const long dim = code_dim();
    std::vector<Matrix> gens;
    gens.reserve(stabilizer_generators.size());
    for (const auto& gen : stabilizer_generators) {
        if (gen.n_qubits() != n_physical) {
            throw ModelDefinitionError("code '" + name + "': generator length mismatch");
        }
        gens.push_back(gen.matrix());
    }
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j) {
            if (ops::max_abs(gens[i] * gens[j] - gens[j] * gens[i]) > kCodeTol) {
                throw ModelDefinitionError("code '" + name + "': generators do not commute");
            }
        }
    }
    if (logical_zero.size() != dim || logical_one.size() != dim) {
        throw ModelDefinitionError("code '" + name + "': codeword dimension mismatch");
    }
    if (std::abs(logical_zero.norm() - 1.0) > kCodeTol ||
        std::abs(logical_one.norm() - 1.0) > kCodeTol ||
        std::abs(logical_zero.dot(logical_one)) > kCodeTol) {
        throw ModelDefinitionError("code '" + name + "': codewords not orthonormal");
    }
    for (const auto& gen : gens) {
        if ((gen * logical_zero - logical_zero).norm() > kCodeTol ||
            (gen * logical_one - logical_one).norm() > kCodeTol) {
            throw ModelDefinitionError("code '" + name +
                                       "': codewords are not +1 stabilizer eigenvectors");
        }
    }
    const size_t n_syndromes = 1ULL << stabilizer_generators.size();
    if (recovery_table.size() != n_syndromes) {
        throw ModelDefinitionError("code '" + name + "': recovery table covers " +
                                   std::to_string(recovery_table.size()) + " of " +
                                   std::to_string(n_syndromes) + " syndromes");
    }
    // Distance-3 lookup: every correctable weight-1 error has a unique nonzero
    // syndrome (uniqueness enforced at construction) and its recovery restores
    // both codewords exactly up to phase.
    for (const auto& err : correctable_errors) {
        const std::string syndrome = syndrome_of(err);
        if (syndrome.find('1') == std::string::npos) {
            throw ModelDefinitionError("code '" + name + "': correctable error " + err.base4() +
                                       " is invisible to the stabilizers");
        }
        const Matrix fix = recovery_table.at(syndrome).matrix() * err.matrix();
        for (const Vector* word : {&logical_zero, &logical_one}) {
            const Vector mapped = fix * (*word);
            if (std::abs(std::abs(word->dot(mapped)) - 1.0) > kCodeTol) {
                throw ModelDefinitionError("code '" + name + "': recovery fails for error " +
                                           err.base4());
            }
        }
    }
}

Vector encode(const CodeSpec& code, const Vector& logical) {
    if (logical.size() != 2) throw ValidationError("encode: logical state must be a 2-vector");
    if (std::abs(logical.norm() - 1.0) > 1e-12) {
        throw ValidationError("encode: logical state must be normalized");
    }
    return logical(0) * code.logical_zero + logical(1) * code.logical_one;
}

namespace {

// Joint vector over (qubits ⊗ env) viewed as a (2^n × d_env) matrix Φ with
// Φ(q, e) = v(q·d_env + e).
Matrix as_qubit_env_matrix(const Vector& joint, long env_dim) {
    const long q_dim = joint.size() / env_dim;
    Matrix phi(q_dim, env_dim);
    for (long q = 0; q < q_dim; ++q) {
        for (long e = 0; e < env_dim; ++e) {
            phi(q, e) = joint(q * env_dim + e);
        }
    }
    return phi;
}

Vector from_qubit_env_matrix(const Matrix& phi) {
    Vector v(phi.rows() * phi.cols());
    for (long q = 0; q < phi.rows(); ++q) {
        for (long e = 0; e < phi.cols(); ++e) {
            v(q * phi.cols() + e) = phi(q, e);
        }
    }
    return v;
}

// Fidelity of the env-traced qubit state of |phi> against a pure target:
// <psi| Tr_env(|phi><phi|) |psi> = ‖Φ†ψ‖².
double reduced_fidelity(const Matrix& phi, const Vector& target) {
    return (phi.adjoint() * target).squaredNorm();
}

} // namespace

Vector decohere(const CodeSpec& code, const models::HamiltonianSpec& model, const Vector& state,
                const Vector& env_init, double t, bool allow_free_qubit) {
    if (model.space.n_qubits != code.n_physical) {
        throw ValidationError("decohere: model has " + std::to_string(model.space.n_qubits) +
                              " qubits but code '" + code.name + "' needs " +
                              std::to_string(code.n_physical));
    }
    if (state.size() != code.code_dim()) {
        throw ValidationError("decohere: encoded state dimension mismatch");
    }
    if (env_init.size() != model.space.env_dim()) {
        throw ValidationError("decohere: env_init dimension mismatch");
    }
    if (!allow_free_qubit) {
        for (const auto& term : model.terms) {
            if (term.kind == models::TermKind::free_qubit) {
                throw ValidationError(
                    "decohere: model has free qubit terms; they rotate the logical frame "
                    "(pass allow_free_qubit to override)");
            }
        }
    }
    Vector joint(model.space.total_dim);
    const long d_env = model.space.env_dim();
    for (long q = 0; q < code.code_dim(); ++q) {
        for (long e = 0; e < d_env; ++e) {
            joint(q * d_env + e) = state(q) * env_init(e);
        }
    }
    if (t == 0.0) return joint;
    const auto u = evolution::exact_propagator(models::assemble(model), t, model.name);
    return u.matrix * joint;
}

std::vector<SyndromeBranch> syndrome_recover(const CodeSpec& code, const Vector& joint,
                                             long env_dim) {
    if (joint.size() != code.code_dim() * env_dim) {
        throw ValidationError("syndrome_recover: joint state dimension mismatch");
    }
    if (std::abs(joint.norm() - 1.0) > 1e-9) {
        throw ValidationError("syndrome_recover: joint state must be normalized");
    }
    const long dim = code.code_dim();
    const size_t n_gens = code.stabilizer_generators.size();
    std::vector<Matrix> gens;
    gens.reserve(n_gens);
    for (const auto& gen : code.stabilizer_generators) gens.push_back(gen.matrix());

    const Matrix phi = as_qubit_env_matrix(joint, env_dim);
    std::vector<SyndromeBranch> branches;
    double total_probability = 0.0;
    for (size_t s = 0; s < (1ULL << n_gens); ++s) {
        std::string bits(n_gens, '0');
        Matrix projector = Matrix::Identity(dim, dim);
        for (size_t i = 0; i < n_gens; ++i) {
            const bool flip = (s >> i) & 1ULL;
            if (flip) bits[i] = '1';
            const double sign = flip ? -1.0 : 1.0;
            projector = projector * 0.5 * (Matrix::Identity(dim, dim) + sign * gens[i]);
        }
        Matrix branch_phi = projector * phi;
        const double probability = branch_phi.squaredNorm();
        total_probability += probability;
        if (probability < 1e-14) continue;

        branch_phi /= std::sqrt(probability);
        const auto recovery = code.recovery_table.find(bits);
        if (recovery == code.recovery_table.end()) {
            throw ModelDefinitionError("syndrome " + bits + " missing from recovery table");
        }
        branch_phi = recovery->second.matrix() * branch_phi;

        SyndromeBranch branch;
        branch.syndrome = bits;
        branch.probability = probability;
        branch.post_recovery_state = from_qubit_env_matrix(branch_phi);
        branches.push_back(std::move(branch));
    }
    if (std::abs(total_probability - 1.0) > 1e-9) {
        throw NumericalError("syndrome probabilities sum to " + std::to_string(total_probability));
    }
    return branches;
}

namespace {

double bare_qubit_infidelity(const models::HamiltonianSpec& baseline, const Vector& bare_state,
                             double t) {
    if (baseline.space.n_qubits != 1) {
        throw ValidationError("unprotected baseline must be a single-qubit model");
    }
    const Vector env0 = models::environment_ground_state(baseline);
    const long d_env = baseline.space.env_dim();
    Vector joint(baseline.space.total_dim);
    for (long q = 0; q < 2; ++q) {
        for (long e = 0; e < d_env; ++e) {
            joint(q * d_env + e) = bare_state(q) * env0(e);
        }
    }
    if (t > 0.0) {
        const auto u = evolution::exact_propagator(models::assemble(baseline), t, baseline.name);
        joint = u.matrix * joint;
    }
    const Matrix phi = as_qubit_env_matrix(joint, d_env);
    return 1.0 - reduced_fidelity(phi, bare_state);
}

} // namespace

FidelityReport logical_fidelity_experiment(
    const CodeSpec& code, const models::HamiltonianSpec& model, const Vector& logical, double t,
    const std::optional<models::HamiltonianSpec>& baseline) {
    const Vector encoded = encode(code, logical);
    const Vector env0 = models::environment_ground_state(model);
    const Vector joint = decohere(code, model, encoded, env0, t);
    const auto branches = syndrome_recover(code, joint, model.space.env_dim());

    FidelityReport report;
    report.time = t;
    double fidelity = 0.0;
    for (const auto& branch : branches) {
        const Matrix phi = as_qubit_env_matrix(branch.post_recovery_state, model.space.env_dim());
        fidelity += branch.probability * reduced_fidelity(phi, encoded);
        report.syndrome_distribution[branch.syndrome] = branch.probability;
    }
    report.protected_infidelity = std::max(0.0, 1.0 - fidelity);

    models::HamiltonianSpec bare_model;
    if (baseline) {
        bare_model = *baseline;
    } else {
        if (!model.preset) {
            throw ValidationError(
                "logical_fidelity_experiment: hand-built model needs an explicit baseline");
        }
        models::PresetParams params = *model.preset;
        params.n_qubits = 1;
        bare_model = models::preset_model(params);
    }
    const Vector bare_state = code.unencoded_basis * logical;
    report.unprotected_infidelity =
        std::max(0.0, bare_qubit_infidelity(bare_model, bare_state, t));
    return report;
}

QeccVerdict qecc_scaling_verdict(const CodeSpec& code, scaling::ModelKind kind,
                                 const std::map<std::string, scaling::ScalingFit>& fits,
                                 double band_scale) {
    const auto require = [&](const std::string& label) -> const scaling::ScalingFit& {
        const auto it = fits.find(label);
        if (it == fits.end()) {
            throw ValidationError("qecc_scaling_verdict: missing fit '" + label + "'");
        }
        return it->second;
    };

    QeccVerdict verdict;
    const std::string tag = " (" + code.name + ")";
    if (kind == scaling::ModelKind::violating) {
        scaling::Verdict v;
        v.claim = scaling::Claim::custom;
        v.label = "protected" + tag + " no quartic gain";
        v.measured = require("protected");
        v.band = 0.4 * band_scale;
        v.direction = scaling::Direction::at_most;
        v.threshold = 2.0 + v.band;
        v.pass = v.measured.exponent <= v.threshold;
        verdict.checks.push_back(v);
    } else {
        scaling::Verdict prot;
        prot.claim = scaling::Claim::custom;
        prot.label = "protected" + tag;
        prot.measured = require("protected");
        prot.band = 0.4 * band_scale;
        prot.direction = scaling::Direction::at_least;
        prot.threshold = 4.0 - prot.band;
        prot.pass = prot.measured.exponent >= prot.threshold;
        verdict.checks.push_back(prot);

        scaling::Verdict unprot;
        unprot.claim = scaling::Claim::custom;
        unprot.label = "unprotected" + tag;
        unprot.measured = require("unprotected");
        unprot.band = 0.2 * band_scale;
        unprot.direction = scaling::Direction::approx;
        unprot.threshold = 2.0;
        unprot.pass = std::abs(unprot.measured.exponent - 2.0) <= unprot.band;
        verdict.checks.push_back(unprot);
    }
    verdict.pass = true;
    for (const auto& check : verdict.checks) verdict.pass = verdict.pass && check.pass;
    return verdict;
}

} // namespace declab::qecc
