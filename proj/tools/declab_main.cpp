// declab_main.cpp — command-line front end: check | sweep | fit | qecc

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "declab/evolution.hpp"
#include "declab/io.hpp"
#include "declab/model.hpp"
#include "declab/qecc.hpp"
#include "declab/scaling.hpp"

namespace fs = std::filesystem;
using namespace declab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitClaimFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInsufficientData = 3;

std::string csv_name(const std::string& label) {
    std::string name = label;
    for (char& c : name) {
        if (c == ':') c = '_';
    }
    return name + ".csv";
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    bool quick = false;
    long seed = -1;  // -1: keep the config's seed
};

io::RunConfig load_config(const CommonArgs& args) {
    if (args.config_path.empty()) {
        throw ValidationError("--config PATH is required");
    }
    io::RunConfig config = io::load_run_config(args.config_path);
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (args.seed >= 0) config.seed = args.seed;
    if (args.quick) {
        config.sweep.n_points = std::max(4, config.sweep.n_points / 2);
    }
    return config;
}

int run_check(const CommonArgs& args, bool expect_violating) {
    const io::RunConfig config = load_config(args);
    const auto model = models::preset_model(config.model);
    const auto report = models::verify_no_qubit_interaction(model);

    std::cout << "model " << model.name << ": no-qubit-interaction condition "
              << (report.holds ? "holds" : "violated") << "\n";
    for (const auto& term : report.violating_terms) {
        std::cout << "  violating term: " << term << "\n";
    }
    fs::create_directories(config.output_dir);
    io::json doc = io::check_report_to_json(model, report);
    doc["seed"] = config.seed;
    io::write_json(config.output_dir / "check_report.json", doc);

    const bool matches = report.holds != expect_violating;
    return matches ? kExitPass : kExitClaimFail;
}

int run_sweep(const CommonArgs& args) {
    const io::RunConfig config = load_config(args);
    if (config.observables.empty()) {
        throw ValidationError("sweep: config lists no observables");
    }
    const auto model = models::preset_model(config.model);
    const std::vector<double> times = config.sweep.times();
    fs::create_directories(config.output_dir);

    // Weight observables share one decomposition pass per time point.
    std::vector<std::pair<double, pauli::WeightSpectrum>> spectra;
    std::vector<std::pair<double, std::vector<pauli::ErrorComponent>>> component_dump;
    const auto ensure_spectra = [&](bool keep_components) {
        if (!spectra.empty() && (!keep_components || !component_dump.empty())) return;
        spectra.clear();
        component_dump.clear();
        const models::Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
        const models::Matrix ht = models::assemble(model);
        const evolution::HermitianEigen eig0(h0);
        const evolution::HermitianEigen eig_t(ht);
        const models::Vector env0 = models::environment_ground_state(model);
        for (double t : times) {
            const auto u_i = evolution::interaction_propagator(eig0, eig_t, t, model.name);
            auto components = pauli::pauli_components(u_i, model.space, env0);
            spectra.emplace_back(t, pauli::weight_spectrum(components, t));
            if (keep_components) component_dump.emplace_back(t, std::move(components));
        }
    };

    for (const auto& label : config.observables) {
        if (label == "pauli_components") {
            ensure_spectra(true);
            io::write_components_csv(config.output_dir / "pauli_components.csv", component_dump);
            continue;
        }
        const auto observable = scaling::Observable::parse(label);
        scaling::SweepTable table;
        table.model_name = model.name;
        if (observable.kind == scaling::ObservableKind::weight_amplitude) {
            if (observable.weight > model.space.n_qubits) {
                throw ValidationError("weight_amplitude: weight exceeds qubit count");
            }
            ensure_spectra(false);
            scaling::SweepTable max_table;
            max_table.observable_label = "weight_max_amplitude:" +
                                         std::to_string(observable.weight);
            table.observable_label = observable.label();
            for (const auto& [t, spectrum] : spectra) {
                table.points.push_back({t, spectrum.amplitudes.at(observable.weight)});
                max_table.points.push_back({t, spectrum.max_norms.at(observable.weight)});
            }
            io::write_sweep_csv(config.output_dir / csv_name(max_table.observable_label),
                                max_table);
        } else {
            table = scaling::time_sweep(model, times, observable);
        }
        io::write_sweep_csv(config.output_dir / csv_name(observable.label()), table);
    }
    std::cout << "wrote " << config.observables.size() << " sweep observable(s) to "
              << config.output_dir.string() << "\n";
    return kExitPass;
}

int run_fit(const CommonArgs& args, const std::vector<std::string>& csv_paths) {
    std::optional<io::RunConfig> config;
    std::vector<fs::path> paths;
    if (!args.config_path.empty()) {
        config = load_config(args);
        for (const auto& label : config->observables) {
            if (label == "pauli_components") continue;
            paths.push_back(config->output_dir / csv_name(label));
        }
    }
    for (const auto& p : csv_paths) paths.emplace_back(p);
    if (paths.empty()) {
        throw ValidationError("fit: provide --config with observables or --csv paths");
    }
    for (const auto& path : paths) {
        if (!fs::exists(path)) {
            throw ValidationError("fit: CSV file '" + path.string() + "' does not exist");
        }
    }

    const double band_scale = args.quick ? 1.5 : 1.0;
    std::map<std::string, scaling::ScalingFit> fits;
    io::json report;
    report["fits"] = io::json::array();
    for (const auto& path : paths) {
        const auto table = io::read_sweep_csv(path);
        const auto fit = scaling::fit_exponent(table);
        fits[table.observable_label] = fit;
        report["fits"].push_back(io::fit_to_json(table.observable_label, fit));
    }

    bool all_pass = true;
    report["verdicts"] = io::json::array();
    if (config) {
        const auto kind = scaling::model_kind_of(config->model.preset);
        report["model_kind"] = scaling::model_kind_name(kind);
        report["seed"] = config->seed;
        const auto verdicts = scaling::independence_verdict(fits, kind, band_scale);
        for (const auto& verdict : verdicts) {
            report["verdicts"].push_back(io::verdict_to_json(verdict));
            all_pass = all_pass && verdict.pass;
            for (auto& fit_entry : report["fits"]) {
                if (verdict.label.rfind(fit_entry.at("observable").get<std::string>(), 0) == 0) {
                    fit_entry["pass"] = verdict.pass;
                    fit_entry["threshold"] = verdict.threshold;
                }
            }
            std::cout << (verdict.pass ? "[pass] " : "[FAIL] ") << verdict.label << ": exponent "
                      << verdict.measured.exponent << " " << scaling::direction_name(verdict.direction)
                      << " " << verdict.threshold << "\n";
        }
    } else {
        for (const auto& [label, fit] : fits) {
            std::cout << label << ": exponent " << fit.exponent << ", prefactor " << fit.prefactor
                      << ", r2 " << fit.r_squared << "\n";
        }
    }
    const fs::path out_dir = config ? config->output_dir : fs::path(args.out_dir.empty() ? "out" : args.out_dir);
    fs::create_directories(out_dir);
    io::write_json(out_dir / "fit_report.json", report);
    return all_pass ? kExitPass : kExitClaimFail;
}

int run_qecc(const CommonArgs& args) {
    const io::RunConfig config = load_config(args);
    const auto model = models::preset_model(config.model);
    const auto code = qecc::CodeSpec::make(config.code);
    const std::vector<double> times = config.sweep.times();
    const double band_scale = args.quick ? 1.5 : 1.0;

    models::Vector logical(2);
    logical << 1.0, 0.0;
    std::vector<qecc::FidelityReport> points;
    scaling::SweepTable protected_table, unprotected_table;
    protected_table.observable_label = "qecc_infidelity:" + code.name;
    unprotected_table.observable_label = "unprotected_infidelity";
    for (double t : times) {
        points.push_back(qecc::logical_fidelity_experiment(code, model, logical, t));
        protected_table.points.push_back({t, points.back().protected_infidelity});
        unprotected_table.points.push_back({t, points.back().unprotected_infidelity});
    }

    std::map<std::string, scaling::ScalingFit> fits;
    fits["protected"] = scaling::fit_exponent(protected_table);
    fits["unprotected"] = scaling::fit_exponent(unprotected_table);
    const auto kind = scaling::model_kind_of(config.model.preset);
    const auto verdict = qecc::qecc_scaling_verdict(code, kind, fits, band_scale);

    fs::create_directories(config.output_dir);
    io::write_sweep_csv(config.output_dir / csv_name(protected_table.observable_label),
                        protected_table);
    io::write_sweep_csv(config.output_dir / csv_name(unprotected_table.observable_label),
                        unprotected_table);
    io::json doc = io::qecc_report_to_json(code, config.model, points, fits.at("protected"),
                                           fits.at("unprotected"), verdict);
    doc["seed"] = config.seed;
    io::write_json(config.output_dir / "qecc_report.json", doc);

    for (const auto& check : verdict.checks) {
        std::cout << (check.pass ? "[pass] " : "[FAIL] ") << check.label << ": exponent "
                  << check.measured.exponent << " " << scaling::direction_name(check.direction)
                  << " " << check.threshold << "\n";
    }
    return verdict.pass ? kExitPass : kExitClaimFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"declab — qubit-environment decoherence scaling laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    bool expect_violating = false;
    std::vector<std::string> csv_paths;

    const auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", args.config_path, "run configuration JSON");
        if (config_required) opt->required();
        cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
        cmd->add_flag("--quick", args.quick, "halve sweep points, widen tolerance bands 1.5x");
        cmd->add_option("--seed", args.seed, "seed recorded in reports (overrides config)");
    };

    auto* check = app.add_subcommand("check", "report the no-qubit-interaction condition");
    add_common(check, true);
    check->add_flag("--expect-violating", expect_violating,
                    "exit 0 when the condition is violated");

    auto* sweep = app.add_subcommand("sweep", "evaluate observables over a time sweep (CSV out)");
    add_common(sweep, true);

    auto* fit = app.add_subcommand("fit", "fit power laws to sweep CSVs and apply verdicts");
    add_common(fit, false);
    fit->add_option("--csv", csv_paths, "sweep CSV files to fit (instead of config observables)");

    auto* qecc_cmd = app.add_subcommand("qecc", "run the logical-fidelity experiment");
    add_common(qecc_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (check->parsed()) return run_check(args, expect_violating);
        if (sweep->parsed()) return run_sweep(args);
        if (fit->parsed()) return run_fit(args, csv_paths);
        if (qecc_cmd->parsed()) return run_qecc(args);
    } catch (const InsufficientDataError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInsufficientData;
    } catch (const ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const CapacityError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const ModelDefinitionError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitClaimFail;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
