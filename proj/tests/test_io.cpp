// test_io.cpp — config schema enforcement, CSV round trips, report shapes

#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "declab/io.hpp"

using namespace declab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("declab_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE("io") {

TEST_CASE("model JSON parses with defaults and strict keys") {
    const auto params = io::model_params_from_json(io::json::parse(R"({
        "preset": "collective_dephasing", "n_qubits": 3, "env_dim": 3, "g": 0.2
    })"));
    CHECK(params.preset == models::Preset::collective_dephasing);
    CHECK(params.n_qubits == 3);
    CHECK(params.env_dim == 3);
    CHECK(params.g == 0.2);
    CHECK(params.g_prime == 0.2);  // defaults to g
    CHECK(params.omega == 1.0);
    CHECK(params.delta == 0.0);
    CHECK(params.env_kind == models::EnvKind::boson);

    const auto spin = io::model_params_from_json(io::json::parse(R"({
        "preset": "independent", "n_qubits": 2, "env_kind": "spin"
    })"));
    CHECK(spin.env_kind == models::EnvKind::spin);
    CHECK(spin.env_dim == 2);

    CHECK_THROWS_AS(io::model_params_from_json(io::json::parse(R"({"n_qubits": 2})")),
                    ValidationError);
    CHECK_THROWS_AS(io::model_params_from_json(io::json::parse(
                        R"({"preset": "independent", "bath_dim": 3})")),
                    ValidationError);
    CHECK_THROWS_AS(io::model_params_from_json(io::json::parse(
                        R"({"preset": "independent", "env_kind": "fermion"})")),
                    ValidationError);
    CHECK_THROWS_AS(io::model_params_from_json(io::json::parse(
                        R"({"preset": "nonsense"})")),
                    ValidationError);

    const auto round = io::model_params_from_json(io::model_params_to_json(params));
    CHECK(round.g == params.g);
    CHECK(round.preset == params.preset);
}

TEST_CASE("run config schema") {
    const auto config = io::run_config_from_json(io::json::parse(R"({
        "model": {"preset": "collective_dephasing", "n_qubits": 3, "env_dim": 3, "g": 0.1},
        "sweep": {"t_min": 0.01, "t_max": 0.1, "n_points": 8, "spacing": "log"},
        "observables": ["weight_amplitude:1", "factorization_residual"],
        "output_dir": "results",
        "seed": 7,
        "code": "bitflip3"
    })"));
    CHECK(config.sweep.n_points == 8);
    CHECK(config.observables.size() == 2);
    CHECK(config.output_dir == fs::path("results"));
    CHECK(config.seed == 7);
    CHECK(config.code == "bitflip3");
    CHECK(config.sweep.times().size() == 8);

    CHECK_THROWS_AS(io::run_config_from_json(io::json::parse(R"({"seed": 1})")), ValidationError);
    CHECK_THROWS_AS(io::run_config_from_json(io::json::parse(R"({
        "model": {"preset": "independent"}, "swep": {}
    })")),
                    ValidationError);
    CHECK_THROWS_AS(io::run_config_from_json(io::json::parse(R"({
        "model": {"preset": "independent"},
        "sweep": {"t_min": 0.0, "t_max": 0.1}
    })")),
                    ValidationError);
    CHECK_THROWS_AS(io::run_config_from_json(io::json::parse(R"({
        "model": {"preset": "independent"},
        "sweep": {"t_min": 0.01, "t_max": 0.1, "n_points": 3}
    })")),
                    ValidationError);
    CHECK_THROWS_AS(io::run_config_from_json(io::json::parse(R"({
        "model": {"preset": "independent"},
        "sweep": {"t_min": 0.01, "t_max": 0.1, "spacing": "cubic"}
    })")),
                    ValidationError);
}

TEST_CASE("sweep CSV round-trips doubles exactly") {
    TempDir tmp;
    scaling::SweepTable table;
    table.observable_label = "weight_amplitude:2";
    table.points = {{0.001, 1.0 / 3.0}, {0.01, 6.02e-23}, {0.1, 0.1234567890123456789},
                    {1.0, 17.0}};
    const auto path = tmp.path / "table.csv";
    io::write_sweep_csv(path, table);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,observable,value");

    const auto read = io::read_sweep_csv(path);
    CHECK(read.observable_label == table.observable_label);
    REQUIRE(read.points.size() == table.points.size());
    for (size_t i = 0; i < read.points.size(); ++i) {
        CHECK(read.points[i].t == table.points[i].t);
        CHECK(read.points[i].value == table.points[i].value);
    }

    CHECK_THROWS_AS(io::read_sweep_csv(tmp.path / "missing.csv"), ValidationError);
    std::ofstream bad(tmp.path / "bad.csv");
    bad << "wrong,header,line\n";
    bad.close();
    CHECK_THROWS_AS(io::read_sweep_csv(tmp.path / "bad.csv"), ValidationError);
}

TEST_CASE("format_double uses 17 significant digits") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(io::format_double(17.0) == "17");
}

TEST_CASE("components CSV has the documented shape") {
    TempDir tmp;
    const auto space = models::build_space(1, {2});
    Eigen::VectorXcd env0(2);
    env0 << 1.0, 0.0;
    const auto components =
        pauli::pauli_components(Eigen::MatrixXcd::Identity(4, 4), space, env0);
    const auto path = tmp.path / "components.csv";
    io::write_components_csv(path, {{0.5, components}});

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,k_string,weight,norm,max_env_amp");
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("fit and verdict JSON carry the documented fields") {
    scaling::ScalingFit fit;
    fit.exponent = 2.01;
    fit.prefactor = 3.0;
    fit.r_squared = 0.9999;
    fit.n_points_used = 8;
    fit.window_min = 0.01;
    fit.window_max = 0.1;
    const auto fit_doc = io::fit_to_json("weight_amplitude:2", fit);
    CHECK(fit_doc.at("observable") == "weight_amplitude:2");
    CHECK(fit_doc.at("exponent").get<double>() == 2.01);
    CHECK(fit_doc.at("window").size() == 2);

    scaling::Verdict verdict;
    verdict.claim = scaling::Claim::weight_ge2_quadratic;
    verdict.label = "weight_amplitude:2";
    verdict.pass = true;
    verdict.measured = fit;
    verdict.threshold = 1.8;
    verdict.direction = scaling::Direction::at_least;
    const auto verdict_doc = io::verdict_to_json(verdict);
    CHECK(verdict_doc.at("pass").get<bool>());
    CHECK(verdict_doc.at("threshold").get<double>() == 1.8);
    CHECK(verdict_doc.at("direction") == ">=");
    CHECK(verdict_doc.at("claim") == "weight_ge2_quadratic");
}

} // TEST_SUITE
