// evolution.hpp — Exact propagators, interaction-picture propagators, truncated
// Dyson series, and the single-factor product decomposition

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "declab/model.hpp"

namespace declab::evolution {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Cached Hermitian eigendecomposition. Immutable after construction, so a
// single instance can serve concurrent readers evaluating many times t.
class HermitianEigen {
public:
    explicit HermitianEigen(const Matrix& h, double herm_tol = 1e-12);

    // exp(-iHt); exact identity at t = 0.
    Matrix evolve(double t) const;
    // exp(+iHt).
    Matrix frame(double t) const { return evolve(-t); }

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Matrix& eigenvectors() const { return evecs_; }
    Eigen::Index dim() const { return evecs_.rows(); }

private:
    Eigen::VectorXd evals_;
    Matrix evecs_;
};

enum class Picture { schrodinger, interaction };

struct Propagator {
    Matrix matrix;
    double time = 0.0;
    Picture picture = Picture::schrodinger;
    std::string generator_label;
    double unitarity_defect = 0.0;             // ‖U†U − I‖_F measured after construction
    double reunitarization_correction = 0.0;   // ‖U_projected − U_raw‖_F, 0 when untouched
};

// U(t) = exp(-iHt) via Hermitian eigendecomposition. Throws ValidationError on
// non-Hermitian input or t < 0, NumericalError if unitarity exceeds 1e-10.
Propagator exact_propagator(const Matrix& h, double t, const std::string& label = "");

// U_I(t) = exp(+i H0 t) · exp(-i HT t), the closed-form interaction-picture
// propagator for time-independent generators.
Propagator interaction_propagator(const Matrix& h0, const Matrix& ht, double t,
                                  const std::string& label = "");

// Same product built from caller-held eigendecompositions (sweep-friendly).
Propagator interaction_propagator(const HermitianEigen& eig0, const HermitianEigen& eig_t,
                                  double t, const std::string& label = "");

// Truncated Dyson series 1 + Σ_{m=1..order} (-i)^m ∫ V(t1)···V(tm) over the
// ordered simplex, V(s) = exp(+iH0 s) HI exp(-iH0 s), by composite Simpson on a
// shared grid. Not unitary in general. order ∈ {1,2,3}, quadrature_steps ≥ 16.
Matrix dyson_truncated(const Matrix& h0, const Matrix& hi, double t, int order,
                       int quadrature_steps);

// Solves i dU/ds = V(s) U with V(s) = exp(+iH0 s) · Va · exp(-iH0 s) by fixed-step
// classical RK4. If the raw unitarity defect exceeds `fail_tol` an AccuracyError
// carrying the achieved residual is thrown; above 1e-9 the result is polar-projected
// back to the unitary manifold and the correction magnitude recorded.
Propagator integrate_interaction_ode(const Matrix& h0, const Matrix& va, double t, int steps,
                                     const std::string& label = "", double fail_tol = 1e-6);

// Single-factor interaction propagator U_I^α generated by the given interaction
// terms (those touching one qubit). steps ≥ 64.
Propagator single_factor_propagator(const Matrix& h0,
                                    const std::vector<models::TensorTerm>& v_alpha_terms,
                                    const models::HilbertSpec& space, double t, int steps);

// Interaction terms grouped per qubit for the product decomposition. Terms
// touching several qubits (violating models) are hosted by their lowest qubit;
// pure environment drives land in group 0.
std::vector<std::vector<models::TensorTerm>> partition_interaction_terms(
    const models::HamiltonianSpec& model);

// Π_α U_I^α(t) with factors multiplied in `ordering` (default ascending
// qubit index).
Matrix single_factor_product(const models::HamiltonianSpec& model, double t, int steps,
                             const std::vector<int>& ordering = {});

// ‖U_I(t) − Π_α U_I^α(t)‖_F. Refuses models that violate the
// no-qubit-interaction condition unless allow_violation is set
// (negative-control runs).
double factorization_residual(const models::HamiltonianSpec& model, double t, int steps,
                              const std::vector<int>& ordering = {},
                              bool allow_violation = false);

} // namespace declab::evolution
