// model.cpp — Space construction, Kronecker embedding, Hamiltonian assembly

#include "declab/model.hpp"

#include <sstream>

namespace declab::models {

long HilbertSpec::slot_dim(int slot) const {
    if (slot < 0 || slot >= n_slots()) {
        throw ValidationError("slot index " + std::to_string(slot) + " out of range [0, " +
                              std::to_string(n_slots()) + ")");
    }
    return is_qubit_slot(slot) ? 2 : env_dims[static_cast<size_t>(slot - n_qubits)];
}

HilbertSpec build_space(int n_qubits, const std::vector<long>& env_dims, long dim_cap) {
    if (n_qubits < 1) {
        throw ValidationError("n_qubits must be >= 1, got " + std::to_string(n_qubits));
    }
    if (env_dims.empty()) {
        throw ValidationError("env_dims must be non-empty (use [1] for no environment)");
    }
    long total = 1L << n_qubits;
    for (long d : env_dims) {
        if (d < 1) {
            throw ValidationError("environment dimension must be >= 1, got " + std::to_string(d));
        }
        if (total > dim_cap / d) {
            throw CapacityError("total dimension exceeds cap " + std::to_string(dim_cap));
        }
        total *= d;
    }
    if (total > dim_cap) {
        throw CapacityError("total dimension " + std::to_string(total) + " exceeds cap " +
                            std::to_string(dim_cap));
    }
    HilbertSpec spec;
    spec.n_qubits = n_qubits;
    spec.env_dims = env_dims;
    spec.total_dim = total;
    return spec;
}

void LocalOperator::validate() const {
    if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
        throw ValidationError("local operator '" + label + "' must be a nonempty square matrix");
    }
    if (!ops::all_finite(matrix)) {
        throw ValidationError("local operator '" + label + "' has non-finite entries");
    }
}

std::string TensorTerm::describe() const {
    std::ostringstream out;
    switch (kind) {
        case TermKind::free_qubit: out << "free_qubit["; break;
        case TermKind::free_env: out << "free_env["; break;
        case TermKind::interaction: out << "interaction["; break;
    }
    bool first = true;
    for (const auto& [slot, op] : factors) {
        if (!first) out << " ⊗ ";
        out << (op.label.empty() ? "op" : op.label) << "@" << slot;
        first = false;
    }
    out << "], coeff=" << coefficient;
    return out.str();
}

namespace {

// A factor counts as identity when it equals a nonzero scalar multiple of I;
// the scalar is understood as folded into the coefficient. An (all-zero)
// factor annihilates the term and is treated as identity-like as well.
bool is_identity_like(const Matrix& m, double tol) {
    const auto dim = m.rows();
    const std::complex<double> scalar = m.trace() / static_cast<double>(dim);
    const double scale = std::max(1.0, std::abs(scalar));
    return ops::max_abs(m - scalar * Matrix::Identity(dim, dim)) <= tol * scale;
}

} // namespace

std::vector<int> TensorTerm::non_identity_qubit_slots(const HilbertSpec& space, double tol) const {
    std::vector<int> slots;
    for (const auto& [slot, op] : factors) {
        if (!space.is_qubit_slot(slot)) continue;
        if (!is_identity_like(op.matrix, tol)) slots.push_back(slot);
    }
    return slots;
}

Matrix embed_local(const LocalOperator& op, int slot, const HilbertSpec& space) {
    op.validate();
    const long expected = space.slot_dim(slot);
    if (op.dim() != expected) {
        throw ValidationError("operator '" + op.label + "' has dim " + std::to_string(op.dim()) +
                              " but slot " + std::to_string(slot) + " has dim " +
                              std::to_string(expected));
    }
    TensorTerm term;
    term.factors.emplace(slot, op);
    term.coefficient = 1.0;
    return embed_term(term, space);
}

Matrix embed_term(const TensorTerm& term, const HilbertSpec& space) {
    if (!std::isfinite(term.coefficient)) {
        throw ValidationError("non-finite coefficient in term " + term.describe());
    }
    for (const auto& entry : term.factors) {
        space.slot_dim(entry.first);  // throws on out-of-range slots
    }
    Matrix out = Matrix::Identity(1, 1);
    for (int slot = 0; slot < space.n_slots(); ++slot) {
        const auto it = term.factors.find(slot);
        if (it == term.factors.end()) {
            out = ops::kron(out, ops::identity(space.slot_dim(slot)));
        } else {
            it->second.validate();
            if (it->second.dim() != space.slot_dim(slot)) {
                throw ValidationError("factor dim mismatch in term " + term.describe());
            }
            out = ops::kron(out, it->second.matrix);
        }
    }
    return term.coefficient * out;
}

Matrix assemble_part(const HamiltonianSpec& spec, HamiltonianPart part) {
    Matrix sum = Matrix::Zero(spec.space.total_dim, spec.space.total_dim);
    for (const auto& term : spec.terms) {
        if (part_of(term.kind) != part) continue;
        sum += embed_term(term, spec.space);
    }
    return sum;
}

Matrix assemble(const HamiltonianSpec& spec) {
    Matrix total = assemble_part(spec, HamiltonianPart::free) +
                   assemble_part(spec, HamiltonianPart::interaction);
    if (!ops::is_hermitian(total)) {
        std::ostringstream msg;
        msg << "assembled Hamiltonian '" << spec.name << "' is not Hermitian; suspect terms:";
        for (const auto& term : spec.terms) {
            const Matrix m = embed_term(term, spec.space);
            if (!ops::is_hermitian(m)) msg << "\n  " << term.describe();
        }
        throw ModelDefinitionError(msg.str());
    }
    return total;
}

} // namespace declab::models
