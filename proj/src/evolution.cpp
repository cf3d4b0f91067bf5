// evolution.cpp — Propagator construction and time-ordered integrals

#include "declab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace declab::evolution {

using complexd = std::complex<double>;
namespace {
constexpr complexd kMinusI{0.0, -1.0};
constexpr double kUnitarityTol = 1e-10;

void require_hermitian(const Matrix& m, const std::string& who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ValidationError(who + ": matrix must be square and nonempty");
    }
    if (!ops::is_hermitian(m)) {
        throw ValidationError(who + ": matrix is not Hermitian");
    }
}

void require_time(double t, const std::string& who) {
    if (!std::isfinite(t) || t < 0.0) {
        throw ValidationError(who + ": time must be finite and non-negative");
    }
}

} // namespace

HermitianEigen::HermitianEigen(const Matrix& h, double herm_tol) {
    if (h.rows() != h.cols() || h.rows() < 1) {
        throw ValidationError("HermitianEigen: matrix must be square and nonempty");
    }
    if (!ops::is_hermitian(h, herm_tol)) {
        throw ValidationError("HermitianEigen: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigendecomposition failed");
    }
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
}

Matrix HermitianEigen::evolve(double t) const {
    if (t == 0.0) return Matrix::Identity(dim(), dim());
    Vector phases(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) {
        phases(k) = std::exp(kMinusI * evals_(k) * t);
    }
    return evecs_ * phases.asDiagonal() * evecs_.adjoint();
}

Propagator exact_propagator(const Matrix& h, double t, const std::string& label) {
    require_hermitian(h, "exact_propagator");
    require_time(t, "exact_propagator");
    HermitianEigen eig(h);
    Propagator prop;
    prop.matrix = eig.evolve(t);
    prop.time = t;
    prop.picture = Picture::schrodinger;
    prop.generator_label = label;
    prop.unitarity_defect = ops::unitarity_defect(prop.matrix);
    if (prop.unitarity_defect > kUnitarityTol) {
        throw NumericalError("exact propagator lost unitarity, defect " +
                             std::to_string(prop.unitarity_defect));
    }
    return prop;
}

Propagator interaction_propagator(const HermitianEigen& eig0, const HermitianEigen& eig_t,
                                  double t, const std::string& label) {
    require_time(t, "interaction_propagator");
    if (eig0.dim() != eig_t.dim()) {
        throw ValidationError("interaction_propagator: H0 and HT dimensions differ");
    }
    Propagator prop;
    prop.matrix = t == 0.0 ? Matrix::Identity(eig0.dim(), eig0.dim())
                           : Matrix(eig0.frame(t) * eig_t.evolve(t));
    prop.time = t;
    prop.picture = Picture::interaction;
    prop.generator_label = label;
    prop.unitarity_defect = ops::unitarity_defect(prop.matrix);
    if (prop.unitarity_defect > kUnitarityTol) {
        throw NumericalError("interaction propagator lost unitarity, defect " +
                             std::to_string(prop.unitarity_defect));
    }
    return prop;
}

Propagator interaction_propagator(const Matrix& h0, const Matrix& ht, double t,
                                  const std::string& label) {
    require_hermitian(h0, "interaction_propagator");
    require_hermitian(ht, "interaction_propagator");
    if (h0.rows() != ht.rows()) {
        throw ValidationError("interaction_propagator: H0 and HT dimensions differ");
    }
    HermitianEigen eig0(h0);
    HermitianEigen eig_t(ht);
    return interaction_propagator(eig0, eig_t, t, label);
}

namespace {

// Cumulative integral of grid samples f_0..f_N over step h: composite Simpson
// at even nodes, a three-point end rule at odd nodes (same O(h^4) order).
std::vector<Matrix> cumulative_simpson(const std::vector<Matrix>& f, double h) {
    const size_t n = f.size();
    const Eigen::Index d = f.front().rows();
    std::vector<Matrix> acc(n, Matrix::Zero(d, d));
    if (n >= 2) {
        if (n == 2) {  // no third point: trapezoid fallback, unused for steps >= 16
            acc[1] = 0.5 * h * (f[0] + f[1]);
            return acc;
        }
        acc[1] = (h / 12.0) * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    }
    for (size_t j = 2; j < n; ++j) {
        if (j % 2 == 0) {
            acc[j] = acc[j - 2] + (h / 3.0) * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
        } else {
            acc[j] = acc[j - 1] + (h / 12.0) * (-f[j - 2] + 8.0 * f[j - 1] + 5.0 * f[j]);
        }
    }
    return acc;
}

} // namespace

Matrix dyson_truncated(const Matrix& h0, const Matrix& hi, double t, int order,
                       int quadrature_steps) {
    require_hermitian(h0, "dyson_truncated");
    require_hermitian(hi, "dyson_truncated");
    require_time(t, "dyson_truncated");
    if (order < 1 || order > 3) {
        throw ValidationError("dyson_truncated: order must be in {1, 2, 3}");
    }
    if (quadrature_steps < 16) {
        throw ValidationError("dyson_truncated: quadrature_steps must be >= 16");
    }
    const Eigen::Index d = h0.rows();
    if (t == 0.0) return Matrix::Identity(d, d);

    const int n = quadrature_steps + (quadrature_steps % 2);
    const double h = t / n;
    HermitianEigen eig0(h0);

    std::vector<Matrix> v(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const Matrix frame = eig0.frame(j * h);
        v[static_cast<size_t>(j)] = frame * hi * frame.adjoint();
    }

    Matrix result = Matrix::Identity(d, d);
    complexd prefactor{1.0, 0.0};
    std::vector<Matrix> inner = v;
    for (int m = 1; m <= order; ++m) {
        const std::vector<Matrix> integral = cumulative_simpson(inner, h);
        prefactor *= kMinusI;
        result += prefactor * integral.back();
        if (m < order) {
            for (size_t j = 0; j < inner.size(); ++j) inner[j] = v[j] * integral[j];
        }
    }
    return result;
}

Propagator integrate_interaction_ode(const Matrix& h0, const Matrix& va, double t, int steps,
                                     const std::string& label, double fail_tol) {
    require_hermitian(h0, "integrate_interaction_ode");
    require_hermitian(va, "integrate_interaction_ode");
    require_time(t, "integrate_interaction_ode");
    if (steps < 1) throw ValidationError("integrate_interaction_ode: steps must be >= 1");
    const Eigen::Index d = h0.rows();

    Propagator prop;
    prop.time = t;
    prop.picture = Picture::interaction;
    prop.generator_label = label;
    if (t == 0.0 || ops::max_abs(va) == 0.0) {
        prop.matrix = Matrix::Identity(d, d);
        return prop;
    }

    HermitianEigen eig0(h0);
    const double h = t / steps;
    const auto v_at = [&](double s) -> Matrix {
        const Matrix frame = eig0.frame(s);
        return frame * va * frame.adjoint();
    };

    Matrix u = Matrix::Identity(d, d);
    for (int j = 0; j < steps; ++j) {
        const double s = j * h;
        const Matrix v1 = v_at(s);
        const Matrix v2 = v_at(s + 0.5 * h);
        const Matrix v3 = v_at(s + h);
        const Matrix k1 = kMinusI * (v1 * u);
        const Matrix k2 = kMinusI * (v2 * (u + 0.5 * h * k1));
        const Matrix k3 = kMinusI * (v2 * (u + 0.5 * h * k2));
        const Matrix k4 = kMinusI * (v3 * (u + h * k3));
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    const double defect = ops::unitarity_defect(u);
    prop.unitarity_defect = defect;
    if (defect > fail_tol) {
        throw AccuracyError("RK4 integration defect " + std::to_string(defect) +
                                " exceeds tolerance; increase steps",
                            defect);
    }
    if (defect > 1e-9) {
        // Polar projection: closest unitary in Frobenius norm.
        Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Matrix projected = svd.matrixU() * svd.matrixV().adjoint();
        prop.reunitarization_correction = (projected - u).norm();
        u = projected;
        prop.unitarity_defect = ops::unitarity_defect(u);
    }
    prop.matrix = std::move(u);
    return prop;
}

Propagator single_factor_propagator(const Matrix& h0,
                                    const std::vector<models::TensorTerm>& v_alpha_terms,
                                    const models::HilbertSpec& space, double t, int steps) {
    if (steps < 64) {
        throw ValidationError("single_factor_propagator: steps must be >= 64");
    }
    Matrix va = Matrix::Zero(space.total_dim, space.total_dim);
    for (const auto& term : v_alpha_terms) {
        va += models::embed_term(term, space);
    }
    return integrate_interaction_ode(h0, va, t, steps, "single_factor");
}

std::vector<std::vector<models::TensorTerm>> partition_interaction_terms(
    const models::HamiltonianSpec& model) {
    std::vector<std::vector<models::TensorTerm>> groups(
        static_cast<size_t>(model.space.n_qubits));
    for (const auto& term : model.terms) {
        if (term.kind != models::TermKind::interaction) continue;
        const auto slots = term.non_identity_qubit_slots(model.space);
        const int host = slots.empty() ? 0 : slots.front();
        groups[static_cast<size_t>(host)].push_back(term);
    }
    return groups;
}

Matrix single_factor_product(const models::HamiltonianSpec& model, double t, int steps,
                             const std::vector<int>& ordering) {
    std::vector<int> order = ordering;
    if (order.empty()) {
        order.resize(static_cast<size_t>(model.space.n_qubits));
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(static_cast<size_t>(model.space.n_qubits));
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) {
        throw ValidationError("single_factor_product: ordering must list every qubit once");
    }

    const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
    const auto groups = partition_interaction_terms(model);
    Matrix product = Matrix::Identity(model.space.total_dim, model.space.total_dim);
    if (t == 0.0) return product;
    for (int alpha : order) {
        const auto& terms = groups[static_cast<size_t>(alpha)];
        if (terms.empty()) continue;  // identity factor
        product *= single_factor_propagator(h0, terms, model.space, t, steps).matrix;
    }
    return product;
}

double factorization_residual(const models::HamiltonianSpec& model, double t, int steps,
                              const std::vector<int>& ordering, bool allow_violation) {
    const auto report = models::verify_no_qubit_interaction(model);
    if (!report.holds && !allow_violation) {
        throw ValidationError(
            "factorization_residual: model violates the no-qubit-interaction condition "
            "(pass allow_violation for negative-control runs)");
    }
    if (t == 0.0) return 0.0;

    const Matrix product = single_factor_product(model, t, steps, ordering);
    const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
    const Matrix ht = models::assemble(model);
    const Propagator u_i = interaction_propagator(h0, ht, t, model.name);
    return (u_i.matrix - product).norm();
}

} // namespace declab::evolution
