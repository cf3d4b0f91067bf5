// model.hpp — Tensor-factor spaces, Hamiltonians as labeled sums of product
// terms, decoherence model presets, and the no-qubit-interaction check
//
// Slot convention: qubit slots come first (0 .. n_qubits-1), environment slots
// follow. Slot 0 is the most significant Kronecker factor, so a joint basis
// index decomposes as (qubit bits, then environment indices), qubit 0 major.

#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "declab/errors.hpp"
#include "declab/ops.hpp"

namespace declab::models {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr long kDefaultDimCap = 4096;

// ------------------------------- Spaces -------------------------------------

// Dimensions and ordering of the qubit ⊗ environment tensor factors.
struct HilbertSpec {
    int n_qubits = 0;
    std::vector<long> env_dims;  // one shared factor for collective models, n for independent
    long total_dim = 0;

    int n_slots() const { return n_qubits + static_cast<int>(env_dims.size()); }
    long qubit_dim() const { return 1L << n_qubits; }
    long env_dim() const { return total_dim / qubit_dim(); }
    bool is_qubit_slot(int slot) const { return slot >= 0 && slot < n_qubits; }

    // Dimension of one slot (2 for qubits, env_dims[i] for environment factors).
    long slot_dim(int slot) const;
};

// Validates invariants and derives total_dim. Throws CapacityError when the
// total dimension exceeds `dim_cap`.
HilbertSpec build_space(int n_qubits, const std::vector<long>& env_dims,
                        long dim_cap = kDefaultDimCap);

// ------------------------------- Terms --------------------------------------

// One operator acting on a single tensor factor.
struct LocalOperator {
    Matrix matrix;
    std::string label;

    long dim() const { return matrix.rows(); }
    void validate() const;
};

enum class TermKind { free_qubit, free_env, interaction };

// Which half of H_T = H_0 + H_I a term belongs to.
enum class HamiltonianPart { free, interaction };

inline HamiltonianPart part_of(TermKind kind) {
    return kind == TermKind::interaction ? HamiltonianPart::interaction
                                         : HamiltonianPart::free;
}

// coefficient × (tensor product of local operators); slots absent from the
// map are implicit identities.
struct TensorTerm {
    std::map<int, LocalOperator> factors;
    double coefficient = 0.0;
    TermKind kind = TermKind::interaction;

    // Human-readable summary used in validation reports.
    std::string describe() const;

    // Qubit slots carrying a factor that is not a scalar multiple of identity.
    std::vector<int> non_identity_qubit_slots(const HilbertSpec& space,
                                              double tol = 1e-12) const;
};

// ------------------------------- Presets ------------------------------------

enum class Preset {
    independent,             // each qubit couples to its own environment factor
    incomplete_independent,  // per-qubit environments with env–env hopping
    collective_dephasing,    // all qubits couple to one shared factor via sigma_z
    collective_general,      // shared factor, sigma_z and sigma_x couplings
    qubit_coupled_violating  // collective_dephasing plus direct qubit–qubit terms
};

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset preset);

enum class EnvKind { boson, spin };

struct PresetParams {
    Preset preset = Preset::collective_dephasing;
    int n_qubits = 3;
    long env_dim = 3;        // truncation of each oscillator factor; must be 2 for spin
    double g = 0.1;          // qubit–environment coupling strength
    double g_prime = 0.1;    // env–env hopping (incomplete) or qubit–qubit coupling (violating)
    double omega = 1.0;      // environment free frequency
    double delta = 0.0;      // free qubit splitting; 0 disables the free qubit terms
    EnvKind env_kind = EnvKind::boson;
    long dim_cap = kDefaultDimCap;
};

// Labeled sum of tensor-product terms over a fixed space. Models built by
// preset_model carry their parameters so downstream experiments can derive
// matched baselines; hand-built specs leave `preset` empty.
struct HamiltonianSpec {
    HilbertSpec space;
    std::vector<TensorTerm> terms;
    std::string name;
    std::optional<PresetParams> preset;
};

// Fully-specified Hamiltonian for one preset. Throws ValidationError for
// out-of-range parameters and CapacityError via build_space.
HamiltonianSpec preset_model(const PresetParams& params);

// ------------------------------- Assembly -----------------------------------

// Identity on all other slots tensored with `op` on the given slot.
Matrix embed_local(const LocalOperator& op, int slot, const HilbertSpec& space);

// Dense matrix of one term: coefficient × ⊗_slots (factor or identity).
Matrix embed_term(const TensorTerm& term, const HilbertSpec& space);

// Sum of the terms of one part, in listed order.
Matrix assemble_part(const HamiltonianSpec& spec, HamiltonianPart part);

// Full Hamiltonian, assembled as assemble_part(free) + assemble_part(interaction)
// so the split identity holds exactly. Throws ModelDefinitionError naming the
// offending terms when the result is not Hermitian.
Matrix assemble(const HamiltonianSpec& spec);

// ------------------------------- Checks -------------------------------------

struct NoQubitInteractionReport {
    bool holds = false;
    std::vector<std::string> violating_terms;
};

// True iff every interaction term has at most one non-identity qubit factor.
// Scalar multiples of identity count as identity (the scalar belongs to the
// coefficient), so the verdict is invariant under term rescaling.
NoQubitInteractionReport verify_no_qubit_interaction(const HamiltonianSpec& spec,
                                                     double tol = 1e-12);

// Interaction terms whose non-identity qubit factors live on qubit `alpha` only.
std::vector<TensorTerm> interaction_terms_for_qubit(const HamiltonianSpec& spec, int alpha);

// Ground state of the environment free Hamiltonian (the free_env terms
// restricted to the environment factors), as a vector over ⊗ env_dims.
// Falls back to the first basis vector when there are no free_env terms.
Vector environment_ground_state(const HamiltonianSpec& spec);

} // namespace declab::models
