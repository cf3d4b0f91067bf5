// test_pauli.cpp — component extraction against closed forms, completeness,
// weight spectra, convention invariance

#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "declab/evolution.hpp"
#include "declab/pauli.hpp"

using namespace declab;
using pauli::Matrix;
using pauli::Vector;
using complexd = std::complex<double>;

namespace {

Vector basis_vector(long dim, long index) {
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return v;
}

Matrix random_unitary(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) a(i, j) = complexd(dist(rng), dist(rng));
    }
    const Matrix h = 0.5 * (a + Matrix(a.adjoint()));
    return evolution::exact_propagator(h, 0.7).matrix;
}

double norm_of(const std::vector<pauli::ErrorComponent>& components, const std::string& k) {
    for (const auto& comp : components) {
        if (comp.string.base4() == k) return comp.norm;
    }
    FAIL("component not found: " << k);
    return 0.0;
}

// Dense reference decomposition with a caller-supplied single-qubit basis;
// used to check invariance under the -i*sigma_y phase convention.
std::vector<double> norms_with_basis(const Matrix& u, const models::HilbertSpec& space,
                                     const Vector& env_init,
                                     const std::array<Matrix, 4>& basis) {
    const long q_dim = space.qubit_dim();
    const long d_env = space.env_dim();
    const std::uint64_t count = 1ULL << (2 * space.n_qubits);
    std::vector<double> norms;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const auto str = pauli::pauli_string_from_index(idx, space.n_qubits);
        Matrix sigma = Matrix::Identity(1, 1);
        for (auto l : str.labels) sigma = ops::kron(sigma, basis[l]);
        Matrix e = Matrix::Zero(d_env, d_env);
        for (long a = 0; a < q_dim; ++a) {
            for (long c = 0; c < q_dim; ++c) {
                if (sigma(c, a) == complexd(0.0, 0.0)) continue;
                e += std::conj(sigma(c, a)) * u.block(c * d_env, a * d_env, d_env, d_env);
            }
        }
        e /= static_cast<double>(q_dim);
        norms.push_back((e * env_init).norm());
    }
    return norms;
}

} // namespace

TEST_SUITE("pauli") {

TEST_CASE("pauli string weights and indexing") {
    const auto s = pauli::pauli_string_from_index(0b001100, 3);  // digits 0,3,0
    CHECK(s.base4() == "030");
    CHECK(s.weight() == 1);
    CHECK(pauli::pauli_string_from_index(0, 4).weight() == 0);
    CHECK(pauli::pauli_string_from_index(0b11111111, 4).weight() == 4);

    const auto zz = pauli::pauli_string_from_index(0b1111, 2);  // "33"
    const auto xi = pauli::pauli_string_from_index(0b0100, 2);  // "10"
    const auto xx = pauli::pauli_string_from_index(0b0101, 2);  // "11"
    CHECK_FALSE(pauli::commutes(zz, xi));
    CHECK(pauli::commutes(zz, xx));
}

TEST_CASE("identity decomposes onto the zero string") {
    const auto space = models::build_space(2, {3});
    const Matrix u = Matrix::Identity(space.total_dim, space.total_dim);
    const auto components = pauli::pauli_components(u, space, basis_vector(3, 0));
    REQUIRE(components.size() == 16);
    for (const auto& comp : components) {
        if (comp.string.weight() == 0) {
            CHECK(comp.norm == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(comp.norm < 1e-14);
        }
    }
    CHECK(pauli::completeness_residual(components) < 1e-12);
    CHECK(pauli::reconstruction_residual(components, u) < 1e-12);
}

TEST_CASE("a bare qubit flip is a single weight-1 component") {
    const auto space = models::build_space(2, {2});
    const models::LocalOperator sx{ops::sigma_x(), "sigma_x"};
    const Matrix u = models::embed_local(sx, 0, space);
    const auto components = pauli::pauli_components(u, space, basis_vector(2, 0));
    CHECK(norm_of(components, "10") == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& comp : components) {
        if (comp.string.base4() != "10") CHECK(comp.norm < 1e-14);
    }
}

TEST_CASE("dephasing propagator matches the sin/cos closed form") {
    // H = g sigma_z ⊗ X on a single qubit with a 2-level environment:
    // U = cos(gt) I - i sin(gt) sigma_z ⊗ X, so the weight-1 norm is |sin(gt)|.
    const auto space = models::build_space(1, {2});
    const double g = 0.35, t = 0.4;
    const Matrix h = g * ops::kron(ops::sigma_z(), ops::sigma_x());
    const auto u = evolution::exact_propagator(h, t);
    const auto components = pauli::pauli_components(u, space, basis_vector(2, 0));

    CHECK(norm_of(components, "0") == doctest::Approx(std::cos(g * t)).epsilon(1e-10));
    CHECK(norm_of(components, "3") == doctest::Approx(std::sin(g * t)).epsilon(1e-10));
    CHECK(norm_of(components, "1") < 1e-14);
    CHECK(norm_of(components, "2") < 1e-14);

    for (const auto& comp : components) {
        if (comp.string.base4() == "3") {
            const Matrix expected = complexd(0, -1) * std::sin(g * t) * ops::sigma_x();
            CHECK((comp.env_operator - expected).norm() < 1e-12);
            REQUIRE(comp.normalized_vector.has_value());
            CHECK(comp.normalized_vector->norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("completeness holds for unitaries and fails for truncations") {
    models::PresetParams p;
    p.preset = models::Preset::collective_general;
    p.n_qubits = 2;
    p.env_dim = 3;
    p.g = 0.25;
    const auto model = models::preset_model(p);
    const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
    const Matrix hi = models::assemble_part(model, models::HamiltonianPart::interaction);
    const Matrix ht = models::assemble(model);
    const Vector env0 = models::environment_ground_state(model);

    const auto ui = evolution::interaction_propagator(h0, ht, 0.3);
    const auto components = pauli::pauli_components(ui, model.space, env0);
    CHECK(pauli::completeness_residual(components) <= 1e-10);
    CHECK(pauli::reconstruction_residual(components, ui.matrix) <= 1e-10);

    // non-unitary source: residual is reported, not asserted
    const Matrix truncated = evolution::dyson_truncated(h0, hi, 0.3, 1, 32);
    const auto trunc_components = pauli::pauli_components(truncated, model.space, env0);
    CHECK(pauli::completeness_residual(trunc_components) > 1e-6);
    CHECK(pauli::reconstruction_residual(trunc_components, truncated) <= 1e-10);
    CHECK_THROWS_AS(pauli::weight_spectrum(trunc_components, 0.3), NumericalError);
    const auto spectrum = pauli::weight_spectrum(trunc_components, 0.3, false);
    CHECK(spectrum.amplitudes.at(0) > 0.9);
}

TEST_CASE("input validation") {
    const auto space = models::build_space(1, {2});
    const Matrix u = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(pauli::pauli_components(u, space, 2.0 * basis_vector(2, 0)), ValidationError);
    CHECK_THROWS_AS(pauli::pauli_components(u, space, basis_vector(3, 0)), ValidationError);
    CHECK_THROWS_AS(pauli::pauli_components(Matrix::Identity(3, 3), space, basis_vector(2, 0)),
                    ValidationError);

    auto components = pauli::pauli_components(u, space, basis_vector(2, 0));
    components.pop_back();
    CHECK_THROWS_AS(pauli::weight_spectrum(components, 0.0), ValidationError);
}

TEST_CASE("weight spectrum aggregates") {
    const auto space = models::build_space(2, {2});
    const Matrix u = Matrix::Identity(space.total_dim, space.total_dim);
    const auto spectrum =
        pauli::weight_spectrum(pauli::pauli_components(u, space, basis_vector(2, 0)), 0.0);
    CHECK(spectrum.amplitudes.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectrum.amplitudes.at(1) < 1e-12);
    CHECK(spectrum.amplitudes.at(2) < 1e-12);
    CHECK(spectrum.counts.at(0) == 1);
    CHECK(spectrum.counts.at(1) == 0);
}

TEST_CASE("A(1)/A(2) grows like 1/t at small times") {
    models::PresetParams p;
    p.preset = models::Preset::collective_dephasing;
    p.n_qubits = 2;
    p.env_dim = 2;
    p.g = 0.1;
    const auto model = models::preset_model(p);
    const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
    const Matrix ht = models::assemble(model);
    const Vector env0 = models::environment_ground_state(model);

    const auto ratio_at = [&](double t) {
        const auto ui = evolution::interaction_propagator(h0, ht, t);
        const auto spectrum =
            pauli::weight_spectrum(pauli::pauli_components(ui, model.space, env0), t);
        return spectrum.amplitudes.at(1) / spectrum.amplitudes.at(2);
    };
    const double r1 = ratio_at(0.01);
    const double r2 = ratio_at(0.005);
    CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.10));

    const auto ui = evolution::interaction_propagator(h0, ht, 0.3);
    const auto spectrum =
        pauli::weight_spectrum(pauli::pauli_components(ui, model.space, env0), 0.3);
    CHECK(spectrum.amplitudes.at(0) <= 1.0 + 1e-9);
}

TEST_CASE("product unitaries have multiplicative component norms") {
    const auto space = models::build_space(2, {1});
    const auto one_qubit = models::build_space(1, {1});
    const Matrix ua = random_unitary(2, 101);
    const Matrix ub = random_unitary(2, 202);
    const Vector trivial_env = basis_vector(1, 0);

    const auto parts_a = pauli::pauli_components(ua, one_qubit, trivial_env);
    const auto parts_b = pauli::pauli_components(ub, one_qubit, trivial_env);
    const auto joint = pauli::pauli_components(ops::kron(ua, ub), space, trivial_env);

    for (const auto& comp : joint) {
        const int ka = comp.string.labels[0];
        const int kb = comp.string.labels[1];
        const double expected = parts_a[static_cast<size_t>(ka)].norm *
                                parts_b[static_cast<size_t>(kb)].norm;
        CHECK(comp.norm == doctest::Approx(expected).epsilon(1e-10));
    }

    // spectra convolve: A_joint(m)^2 = sum over m = ma+mb of products
    const auto sa = pauli::weight_spectrum(parts_a, 0.0);
    const auto sb = pauli::weight_spectrum(parts_b, 0.0);
    const auto sj = pauli::weight_spectrum(joint, 0.0);
    for (int m = 0; m <= 2; ++m) {
        double expected_sq = 0.0;
        for (int ma = 0; ma <= 1; ++ma) {
            const int mb = m - ma;
            if (mb < 0 || mb > 1) continue;
            expected_sq += sa.amplitudes.at(ma) * sa.amplitudes.at(ma) * sb.amplitudes.at(mb) *
                           sb.amplitudes.at(mb);
        }
        CHECK(sj.amplitudes.at(m) * sj.amplitudes.at(m) ==
              doctest::Approx(expected_sq).epsilon(1e-9));
    }
}

TEST_CASE("norms are invariant under the -i sigma_y convention") {
    models::PresetParams p;
    p.preset = models::Preset::collective_general;
    p.n_qubits = 2;
    p.env_dim = 2;
    p.g = 0.3;
    const auto model = models::preset_model(p);
    const Matrix ht = models::assemble(model);
    const Vector env0 = models::environment_ground_state(model);
    const Matrix u = evolution::exact_propagator(ht, 0.4).matrix;

    const std::array<Matrix, 4> standard = {ops::identity(2), ops::sigma_x(), ops::sigma_y(),
                                            ops::sigma_z()};
    const std::array<Matrix, 4> phased = {ops::identity(2), ops::sigma_x(),
                                          Matrix(complexd(0, -1) * ops::sigma_y()),
                                          ops::sigma_z()};
    const auto norms_standard = norms_with_basis(u, model.space, env0, standard);
    const auto norms_phased = norms_with_basis(u, model.space, env0, phased);
    const auto components = pauli::pauli_components(u, model.space, env0);
    for (size_t i = 0; i < components.size(); ++i) {
        CHECK(components[i].norm == doctest::Approx(norms_standard[i]).epsilon(1e-10));
        CHECK(norms_standard[i] == doctest::Approx(norms_phased[i]).epsilon(1e-10));
    }
}

TEST_CASE("mixing spectra combines amplitudes in quadrature") {
    pauli::WeightSpectrum a, b;
    a.time = b.time = 0.1;
    a.amplitudes = {{0, 1.0}, {1, 0.0}};
    b.amplitudes = {{0, 0.0}, {1, 1.0}};
    const auto mixed = pauli::mix_spectra({{0.5, a}, {0.5, b}});
    CHECK(mixed.amplitudes.at(0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(mixed.amplitudes.at(1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(pauli::mix_spectra({}), ValidationError);
}

} // TEST_SUITE
