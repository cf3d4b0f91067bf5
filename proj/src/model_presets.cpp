// model_presets.cpp — Decoherence model presets and the no-qubit-interaction check

#include "declab/model.hpp"

#include <cmath>

namespace declab::models {

Preset preset_from_name(const std::string& name) {
    if (name == "independent") return Preset::independent;
    if (name == "incomplete_independent") return Preset::incomplete_independent;
    if (name == "collective_dephasing") return Preset::collective_dephasing;
    if (name == "collective_general") return Preset::collective_general;
    if (name == "qubit_coupled_violating") return Preset::qubit_coupled_violating;
    throw ValidationError("unknown preset '" + name + "'");
}

std::string preset_name(Preset preset) {
    switch (preset) {
        case Preset::independent: return "independent";
        case Preset::incomplete_independent: return "incomplete_independent";
        case Preset::collective_dephasing: return "collective_dephasing";
        case Preset::collective_general: return "collective_general";
        case Preset::qubit_coupled_violating: return "qubit_coupled_violating";
    }
    throw ValidationError("invalid preset enum value");
}

namespace {

struct EnvOps {
    LocalOperator coupling;  // b + b† (boson) or sigma_x (spin)
    LocalOperator free_term; // omega * b†b  or omega * sigma_z
    LocalOperator lowering;  // b or sigma_-
};

EnvOps make_env_ops(const PresetParams& p) {
    EnvOps e;
    if (p.env_kind == EnvKind::boson) {
        e.coupling = {ops::boson_position(p.env_dim), "boson_x"};
        e.free_term = {p.omega * ops::boson_number(p.env_dim), "omega*n"};
        e.lowering = {ops::boson_lowering(p.env_dim), "b"};
    } else {
        if (p.env_dim != 2) {
            throw ValidationError("spin environment requires env_dim = 2, got " +
                                  std::to_string(p.env_dim));
        }
        e.coupling = {ops::sigma_x(), "env_sigma_x"};
        e.free_term = {p.omega * ops::sigma_z(), "omega*sigma_z"};
        e.lowering = {ops::spin_lowering(), "sigma_-"};
    }
    return e;
}

void validate_params(const PresetParams& p) {
    if (p.n_qubits < 1) {
        throw ValidationError("n_qubits must be >= 1, got " + std::to_string(p.n_qubits));
    }
    if (p.env_dim < 1) {
        throw ValidationError("env_dim must be >= 1, got " + std::to_string(p.env_dim));
    }
    for (double v : {p.g, p.g_prime, p.omega, p.delta}) {
        if (!std::isfinite(v)) throw ValidationError("preset parameters must be finite");
    }
}

void add_free_qubit_terms(HamiltonianSpec& spec, const PresetParams& p) {
    if (p.delta == 0.0) return;
    for (int alpha = 0; alpha < p.n_qubits; ++alpha) {
        TensorTerm term;
        term.kind = TermKind::free_qubit;
        term.coefficient = p.delta;
        term.factors.emplace(alpha, LocalOperator{ops::sigma_z(), "sigma_z"});
        spec.terms.push_back(std::move(term));
    }
}

void add_env_free_terms(HamiltonianSpec& spec, const PresetParams& p, const EnvOps& env,
                        int n_env_factors) {
    for (int k = 0; k < n_env_factors; ++k) {
        TensorTerm term;
        term.kind = TermKind::free_env;
        term.coefficient = 1.0;  // omega folded into the operator
        term.factors.emplace(p.n_qubits + k, env.free_term);
        spec.terms.push_back(std::move(term));
    }
}

void add_coupling(HamiltonianSpec& spec, double g, int qubit_slot, const LocalOperator& qop,
                  int env_slot, const LocalOperator& eop) {
    TensorTerm term;
    term.kind = TermKind::interaction;
    term.coefficient = g;
    term.factors.emplace(qubit_slot, qop);
    term.factors.emplace(env_slot, eop);
    spec.terms.push_back(std::move(term));
}

// Nearest-neighbour hopping a†_k a_{k+1} + a_k a†_{k+1} between environment
// factors; Hermitian as a pair, each half carried as its own term.
void add_env_hopping(HamiltonianSpec& spec, const PresetParams& p, const EnvOps& env) {
    const LocalOperator raising{env.lowering.matrix.adjoint().eval(),
                                env.lowering.label + "^dag"};
    for (int k = 0; k + 1 < p.n_qubits; ++k) {
        const int left = p.n_qubits + k;
        const int right = p.n_qubits + k + 1;
        TensorTerm hop;
        hop.kind = TermKind::free_env;
        hop.coefficient = p.g_prime;
        hop.factors.emplace(left, raising);
        hop.factors.emplace(right, env.lowering);
        spec.terms.push_back(hop);

        TensorTerm conj;
        conj.kind = TermKind::free_env;
        conj.coefficient = p.g_prime;
        conj.factors.emplace(left, env.lowering);
        conj.factors.emplace(right, raising);
        spec.terms.push_back(std::move(conj));
    }
}

} // namespace

HamiltonianSpec preset_model(const PresetParams& params) {
    validate_params(params);
    const EnvOps env = make_env_ops(params);
    const LocalOperator qubit_z{ops::sigma_z(), "sigma_z"};
    const LocalOperator qubit_x{ops::sigma_x(), "sigma_x"};

    HamiltonianSpec spec;
    spec.name = preset_name(params.preset);
    spec.preset = params;

    const bool per_qubit_env = params.preset == Preset::independent ||
                               params.preset == Preset::incomplete_independent;
    const int n_env = per_qubit_env ? params.n_qubits : 1;
    spec.space = build_space(params.n_qubits,
                             std::vector<long>(static_cast<size_t>(n_env), params.env_dim),
                             params.dim_cap);

    add_free_qubit_terms(spec, params);
    add_env_free_terms(spec, params, env, n_env);

    switch (params.preset) {
        case Preset::independent:
            for (int a = 0; a < params.n_qubits; ++a) {
                add_coupling(spec, params.g, a, qubit_z, params.n_qubits + a, env.coupling);
            }
            break;
        case Preset::incomplete_independent:
            for (int a = 0; a < params.n_qubits; ++a) {
                add_coupling(spec, params.g, a, qubit_z, params.n_qubits + a, env.coupling);
            }
            add_env_hopping(spec, params, env);
            break;
        case Preset::collective_dephasing:
            for (int a = 0; a < params.n_qubits; ++a) {
                add_coupling(spec, params.g, a, qubit_z, params.n_qubits, env.coupling);
            }
            break;
        case Preset::collective_general:
            for (int a = 0; a < params.n_qubits; ++a) {
                add_coupling(spec, params.g, a, qubit_z, params.n_qubits, env.coupling);
                add_coupling(spec, params.g, a, qubit_x, params.n_qubits, env.coupling);
            }
            break;
        case Preset::qubit_coupled_violating:
            for (int a = 0; a < params.n_qubits; ++a) {
                add_coupling(spec, params.g, a, qubit_z, params.n_qubits, env.coupling);
            }
            for (int a = 0; a + 1 < params.n_qubits; ++a) {
                TensorTerm qq;
                qq.kind = TermKind::interaction;
                qq.coefficient = params.g_prime;
                qq.factors.emplace(a, qubit_z);
                qq.factors.emplace(a + 1, qubit_z);
                spec.terms.push_back(std::move(qq));
            }
            break;
    }
    return spec;
}

NoQubitInteractionReport verify_no_qubit_interaction(const HamiltonianSpec& spec, double tol) {
    NoQubitInteractionReport report;
    report.holds = true;
    for (const auto& term : spec.terms) {
        if (term.kind != TermKind::interaction) continue;
        if (term.non_identity_qubit_slots(spec.space, tol).size() > 1) {
            report.holds = false;
            report.violating_terms.push_back(term.describe());
        }
    }
    return report;
}

std::vector<TensorTerm> interaction_terms_for_qubit(const HamiltonianSpec& spec, int alpha) {
    std::vector<TensorTerm> out;
    for (const auto& term : spec.terms) {
        if (term.kind != TermKind::interaction) continue;
        const auto slots = term.non_identity_qubit_slots(spec.space);
        if (slots.size() == 1 && slots.front() == alpha) out.push_back(term);
    }
    return out;
}

Vector environment_ground_state(const HamiltonianSpec& spec) {
    const long d_env = spec.space.env_dim();
    // Environment-only space: the env factors re-indexed as slots of their own.
    HilbertSpec env_space;
    env_space.n_qubits = 0;
    env_space.env_dims = spec.space.env_dims;
    env_space.total_dim = d_env;

    Matrix h_env = Matrix::Zero(d_env, d_env);
    bool any = false;
    for (const auto& term : spec.terms) {
        if (term.kind != TermKind::free_env) continue;
        TensorTerm shifted;
        shifted.coefficient = term.coefficient;
        shifted.kind = term.kind;
        for (const auto& [slot, op] : term.factors) {
            if (spec.space.is_qubit_slot(slot)) {
                throw ModelDefinitionError("free_env term touches a qubit slot: " +
                                           term.describe());
            }
            shifted.factors.emplace(slot - spec.space.n_qubits, op);
        }
        h_env += embed_term(shifted, env_space);
        any = true;
    }
    if (!any) {
        Vector ground = Vector::Zero(d_env);
        ground(0) = 1.0;
        return ground;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h_env);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("environment ground-state eigensolve failed");
    }
    return solver.eigenvectors().col(0);
}

} // namespace declab::models
