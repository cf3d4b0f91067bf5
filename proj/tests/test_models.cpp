// test_models.cpp — spaces, embeddings, assembly, presets, condition checks

#include <doctest.h>

#include <random>

#include "declab/model.hpp"

using namespace declab;
using models::Matrix;
using models::Vector;

namespace {

models::PresetParams params_for(models::Preset preset, int n, long d, double g,
                                models::EnvKind kind = models::EnvKind::boson) {
    models::PresetParams p;
    p.preset = preset;
    p.n_qubits = n;
    p.env_dim = d;
    p.g = g;
    p.g_prime = g;
    p.env_kind = kind;
    return p;
}

// Independent-assembly oracle: each per-qubit group of the independent model
// (free qubit + its environment free term + its coupling) built as one
// explicit Kronecker chain over all 2n slots, then summed.
Matrix independent_model_oracle(int n, long d, double g, double omega, double delta) {
    const auto chain = [&](const std::vector<Matrix>& factors) {
        Matrix out = Matrix::Identity(1, 1);
        for (const auto& f : factors) out = ops::kron(out, f);
        return out;
    };
    const Matrix iq = ops::identity(2);
    const Matrix ie = ops::identity(d);
    long dim = 1L << n;
    for (int s = 0; s < n; ++s) dim *= d;
    Matrix total = Matrix::Zero(dim, dim);
    for (int alpha = 0; alpha < n; ++alpha) {
        std::vector<Matrix> free_qubit(static_cast<size_t>(2 * n), iq);
        std::vector<Matrix> free_env(static_cast<size_t>(2 * n), iq);
        std::vector<Matrix> coupling(static_cast<size_t>(2 * n), iq);
        for (int s = n; s < 2 * n; ++s) {
            free_qubit[static_cast<size_t>(s)] = ie;
            free_env[static_cast<size_t>(s)] = ie;
            coupling[static_cast<size_t>(s)] = ie;
        }
        free_qubit[static_cast<size_t>(alpha)] = delta * ops::sigma_z();
        free_env[static_cast<size_t>(n + alpha)] = omega * ops::boson_number(d);
        coupling[static_cast<size_t>(alpha)] = ops::sigma_z();
        coupling[static_cast<size_t>(n + alpha)] = g * ops::boson_position(d);
        if (delta != 0.0) total += chain(free_qubit);
        total += chain(free_env) + chain(coupling);
    }
    return total;
}

} // namespace

TEST_SUITE("models") {

TEST_CASE("build_space derives total dimensions") {
    CHECK(models::build_space(1, {2}).total_dim == 4);
    CHECK(models::build_space(3, {3}).total_dim == 24);
    CHECK(models::build_space(5, {4}).total_dim == 128);
    const auto space = models::build_space(2, {3, 4});
    CHECK(space.total_dim == 48);
    CHECK(space.slot_dim(0) == 2);
    CHECK(space.slot_dim(2) == 3);
    CHECK(space.slot_dim(3) == 4);
    CHECK(space.env_dim() == 12);
}

TEST_CASE("build_space rejects bad inputs") {
    CHECK_THROWS_AS(models::build_space(0, {2}), ValidationError);
    CHECK_THROWS_AS(models::build_space(2, {}), ValidationError);
    CHECK_THROWS_AS(models::build_space(2, {0}), ValidationError);
    CHECK_THROWS_AS(models::build_space(2, {-3}), ValidationError);
    CHECK_THROWS_AS(models::build_space(5, {4, 4, 4, 4, 4}), CapacityError);
    CHECK_THROWS_AS(models::build_space(3, {3}, 20), CapacityError);
}

TEST_CASE("embed_local places operators on the right slot") {
    const models::LocalOperator sx{ops::sigma_x(), "sigma_x"};
    const models::LocalOperator sz{ops::sigma_z(), "sigma_z"};

    const auto tiny = models::build_space(1, {1});
    CHECK(ops::max_abs(models::embed_local(sx, 0, tiny) - ops::sigma_x()) == 0.0);

    const auto space = models::build_space(2, {1});
    const models::LocalOperator id2{ops::identity(2), "id"};
    CHECK(ops::max_abs(models::embed_local(id2, 1, space) - ops::identity(4)) == 0.0);

    // qubit-0-major ordering: sigma_z on the second qubit is I ⊗ sigma_z
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 1.0, -1.0, 1.0, -1.0;
    CHECK(ops::max_abs(models::embed_local(sz, 1, space) - expected) == 0.0);

    CHECK_THROWS_AS(models::embed_local(sz, 3, space), ValidationError);
    const models::LocalOperator wrong{ops::identity(3), "id3"};
    CHECK_THROWS_AS(models::embed_local(wrong, 0, space), ValidationError);
}

TEST_CASE("assemble sums terms and checks Hermiticity") {
    models::HamiltonianSpec spec;
    spec.space = models::build_space(1, {1});
    CHECK(ops::max_abs(models::assemble(spec)) == 0.0);

    models::TensorTerm term;
    term.kind = models::TermKind::free_qubit;
    term.coefficient = 0.5;
    term.factors.emplace(0, models::LocalOperator{ops::sigma_z(), "sigma_z"});
    spec.terms.push_back(term);
    Matrix expected = Matrix::Zero(2, 2);
    expected.diagonal() << 0.5, -0.5;
    CHECK(ops::max_abs(models::assemble(spec) - expected) == 0.0);

    // a lone lowering operator makes the sum non-Hermitian; the error names it
    models::TensorTerm bad;
    bad.kind = models::TermKind::free_env;
    bad.coefficient = 1.0;
    bad.factors.emplace(0, models::LocalOperator{ops::spin_lowering(), "sigma_-"});
    spec.terms.push_back(bad);
    CHECK_THROWS_WITH_AS(models::assemble(spec), doctest::Contains("sigma_-"),
                         ModelDefinitionError);
}

TEST_CASE("independent preset matches the per-group Kronecker oracle") {
    models::PresetParams p = params_for(models::Preset::independent, 2, 3, 0.17);
    p.omega = 0.9;
    p.delta = 0.25;
    const auto model = models::preset_model(p);
    const Matrix oracle = independent_model_oracle(2, 3, 0.17, 0.9, 0.25);
    CHECK((models::assemble(model) - oracle).norm() < 1e-13);
}

TEST_CASE("presets have the advertised structure") {
    const auto independent = models::preset_model(params_for(models::Preset::independent, 2, 2, 0.1));
    int couplings = 0;
    for (const auto& term : independent.terms) {
        if (term.kind == models::TermKind::interaction) ++couplings;
    }
    CHECK(couplings == 2);
    CHECK(independent.space.env_dims.size() == 2);
    CHECK(models::verify_no_qubit_interaction(independent).holds);

    const auto collective =
        models::preset_model(params_for(models::Preset::collective_dephasing, 3, 3, 0.1));
    couplings = 0;
    for (const auto& term : collective.terms) {
        if (term.kind == models::TermKind::interaction) {
            ++couplings;
            CHECK(term.factors.count(3) == 1);  // shared environment slot
        }
    }
    CHECK(couplings == 3);
    CHECK(collective.space.env_dims.size() == 1);
    CHECK(models::verify_no_qubit_interaction(collective).holds);

    const auto violating =
        models::preset_model(params_for(models::Preset::qubit_coupled_violating, 2, 2, 0.1));
    const auto report = models::verify_no_qubit_interaction(violating);
    CHECK_FALSE(report.holds);
    CHECK(report.violating_terms.size() == 1);

    const auto incomplete =
        models::preset_model(params_for(models::Preset::incomplete_independent, 2, 2, 0.1));
    CHECK(models::verify_no_qubit_interaction(incomplete).holds);

    CHECK_THROWS_AS(models::preset_model(params_for(models::Preset::independent, 0, 2, 0.1)),
                    ValidationError);
    models::PresetParams bad_spin = params_for(models::Preset::collective_dephasing, 2, 3, 0.1,
                                               models::EnvKind::spin);
    CHECK_THROWS_AS(models::preset_model(bad_spin), ValidationError);
}

TEST_CASE("verify_no_qubit_interaction handles edge shapes") {
    auto model = models::preset_model(params_for(models::Preset::collective_dephasing, 2, 2, 0.1));

    // two non-identity qubit factors -> named in the report
    models::TensorTerm zz;
    zz.kind = models::TermKind::interaction;
    zz.coefficient = 0.3;
    zz.factors.emplace(0, models::LocalOperator{ops::sigma_z(), "sigma_z"});
    zz.factors.emplace(1, models::LocalOperator{ops::sigma_z(), "sigma_z"});
    auto broken = model;
    broken.terms.push_back(zz);
    const auto report = models::verify_no_qubit_interaction(broken);
    CHECK_FALSE(report.holds);
    REQUIRE(report.violating_terms.size() == 1);
    CHECK(report.violating_terms.front().find("sigma_z@0") != std::string::npos);

    // pure environment drive (zero non-identity qubit factors) is fine
    models::TensorTerm drive;
    drive.kind = models::TermKind::interaction;
    drive.coefficient = 0.2;
    drive.factors.emplace(2, models::LocalOperator{ops::boson_position(2), "boson_x"});
    auto driven = model;
    driven.terms.push_back(drive);
    CHECK(models::verify_no_qubit_interaction(driven).holds);

    // scalar multiples of identity on a qubit slot count as identity
    models::TensorTerm scaled;
    scaled.kind = models::TermKind::interaction;
    scaled.coefficient = 0.5;
    scaled.factors.emplace(0, models::LocalOperator{2.0 * ops::identity(2), "2I"});
    scaled.factors.emplace(1, models::LocalOperator{ops::sigma_z(), "sigma_z"});
    auto rescaled = model;
    rescaled.terms.push_back(scaled);
    CHECK(models::verify_no_qubit_interaction(rescaled).holds);
}

TEST_CASE("verify verdict is invariant under coefficient rescaling") {
    auto model =
        models::preset_model(params_for(models::Preset::qubit_coupled_violating, 2, 2, 0.1));
    const bool before = models::verify_no_qubit_interaction(model).holds;
    for (auto& term : model.terms) term.coefficient *= 37.5;
    CHECK(models::verify_no_qubit_interaction(model).holds == before);
}

TEST_CASE("every preset assembles to a Hermitian matrix that splits exactly") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> gs(0.05, 0.3);
    const models::Preset presets[] = {
        models::Preset::independent, models::Preset::incomplete_independent,
        models::Preset::collective_dephasing, models::Preset::collective_general,
        models::Preset::qubit_coupled_violating};
    for (const auto preset : presets) {
        for (int rep = 0; rep < 3; ++rep) {
            const bool per_qubit = preset == models::Preset::independent ||
                                   preset == models::Preset::incomplete_independent;
            const int n = per_qubit ? 2 : 3;
            models::PresetParams p = params_for(preset, n, 2 + rep % 2, gs(rng));
            p.delta = rep == 2 ? 0.4 : 0.0;
            const auto model = models::preset_model(p);
            const Matrix h = models::assemble(model);
            const double scale = std::max(1.0, ops::max_abs(h));
            CHECK(ops::max_abs(h - h.adjoint()) <= 1e-12 * scale);

            const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
            const Matrix hi = models::assemble_part(model, models::HamiltonianPart::interaction);
            CHECK(ops::max_abs(h - (h0 + hi)) == 0.0);  // same summation order by construction
        }
    }
}

TEST_CASE("independent model groups commute blockwise") {
    models::PresetParams p = params_for(models::Preset::independent, 3, 2, 0.2);
    p.delta = 0.3;
    const auto model = models::preset_model(p);

    // group alpha: all terms whose factors touch qubit alpha or environment alpha
    std::vector<Matrix> groups(3, Matrix::Zero(model.space.total_dim, model.space.total_dim));
    for (const auto& term : model.terms) {
        int alpha = -1;
        for (const auto& [slot, op] : term.factors) {
            alpha = model.space.is_qubit_slot(slot) ? slot : slot - model.space.n_qubits;
        }
        REQUIRE(alpha >= 0);
        groups[static_cast<size_t>(alpha)] += models::embed_term(term, model.space);
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            const Matrix commutator = groups[a] * groups[b] - groups[b] * groups[a];
            CHECK(ops::max_abs(commutator) <= 1e-10);
        }
    }
}

TEST_CASE("environment ground state matches the free environment Hamiltonian") {
    const auto boson = models::preset_model(params_for(models::Preset::collective_dephasing, 2, 3, 0.1));
    const Vector gs = models::environment_ground_state(boson);
    CHECK(std::abs(gs(0)) == doctest::Approx(1.0).epsilon(1e-12));

    // omega * sigma_z has its ground state in the second basis vector
    const auto spin = models::preset_model(
        params_for(models::Preset::collective_dephasing, 2, 2, 0.1, models::EnvKind::spin));
    const Vector spin_gs = models::environment_ground_state(spin);
    CHECK(std::abs(spin_gs(1)) == doctest::Approx(1.0).epsilon(1e-12));
}

} // TEST_SUITE

