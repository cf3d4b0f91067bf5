// scaling.cpp — Sweep evaluation, OLS fitting in log space, verdict thresholds

#include "declab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "declab/evolution.hpp"
#include "declab/pauli.hpp"
#include "declab/qecc.hpp"

namespace declab::scaling {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace {
constexpr double kNumericalZero = 1e-14;
} // namespace

void SweepTable::validate() const {
    if (points.size() < 4) {
        throw ValidationError("sweep table '" + observable_label + "' needs at least 4 points");
    }
    double prev = 0.0;
    for (const auto& p : points) {
        if (!(p.t > prev) || !std::isfinite(p.t)) {
            throw ValidationError("sweep times must be positive and strictly increasing");
        }
        if (!std::isfinite(p.value) || p.value < 0.0) {
            throw ValidationError("sweep values must be finite and non-negative");
        }
        prev = p.t;
    }
}

std::string claim_name(Claim claim) {
    switch (claim) {
        case Claim::weight1_linear: return "weight1_linear";
        case Claim::weight_ge2_quadratic: return "weight_ge2_quadratic";
        case Claim::independent_weight_k: return "independent_weight_k";
        case Claim::factorization_quadratic: return "factorization_quadratic";
        case Claim::custom: return "custom";
    }
    return "custom";
}

std::string direction_name(Direction direction) {
    switch (direction) {
        case Direction::at_least: return ">=";
        case Direction::at_most: return "<=";
        case Direction::approx: return "~";
    }
    return "~";
}

std::string Observable::label() const {
    switch (kind) {
        case ObservableKind::weight_amplitude: return "weight_amplitude:" + std::to_string(weight);
        case ObservableKind::factorization_residual: return "factorization_residual";
        case ObservableKind::dyson_defect: return "dyson_defect:" + std::to_string(dyson_order);
        case ObservableKind::qecc_infidelity: return "qecc_infidelity:" + code;
        case ObservableKind::unprotected_infidelity: return "unprotected_infidelity";
    }
    throw ValidationError("invalid observable kind");
}

Observable Observable::parse(const std::string& text) {
    Observable obs;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    const auto int_arg = [&](const std::string& what) {
        try {
            size_t used = 0;
            const int v = std::stoi(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("observable '" + text + "' needs an integer " + what);
        }
    };
    if (head == "weight_amplitude") {
        obs.kind = ObservableKind::weight_amplitude;
        obs.weight = int_arg("weight");
        if (obs.weight < 0) throw ValidationError("weight must be non-negative");
    } else if (head == "factorization_residual") {
        obs.kind = ObservableKind::factorization_residual;
    } else if (head == "dyson_defect") {
        obs.kind = ObservableKind::dyson_defect;
        obs.dyson_order = arg.empty() ? 2 : int_arg("order");
    } else if (head == "qecc_infidelity") {
        obs.kind = ObservableKind::qecc_infidelity;
        if (!arg.empty()) obs.code = arg;
    } else if (head == "unprotected_infidelity") {
        obs.kind = ObservableKind::unprotected_infidelity;
    } else {
        throw ValidationError("unknown observable '" + text + "'");
    }
    return obs;
}

namespace {

void require_times(const std::vector<double>& times) {
    if (times.empty()) throw ValidationError("time_sweep: empty time list");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev) || !std::isfinite(t)) {
            throw ValidationError("time_sweep: times must be positive and strictly increasing");
        }
        prev = t;
    }
}

SweepTable weight_amplitude_sweep(const models::HamiltonianSpec& model,
                                  const std::vector<double>& times, int weight) {
    if (weight > model.space.n_qubits) {
        throw ValidationError("weight_amplitude: weight exceeds qubit count");
    }
    const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
    const Matrix ht = models::assemble(model);
    const evolution::HermitianEigen eig0(h0);
    const evolution::HermitianEigen eig_t(ht);
    const Vector env0 = models::environment_ground_state(model);

    SweepTable table;
    for (double t : times) {
        const auto u_i = evolution::interaction_propagator(eig0, eig_t, t, model.name);
        const auto components = pauli::pauli_components(u_i, model.space, env0);
        const auto spectrum = pauli::weight_spectrum(components, t);
        table.points.push_back({t, spectrum.amplitudes.at(weight)});
    }
    return table;
}

SweepTable dyson_defect_sweep(const models::HamiltonianSpec& model,
                              const std::vector<double>& times, int order, int quadrature_steps) {
    const Matrix h0 = models::assemble_part(model, models::HamiltonianPart::free);
    const Matrix hi = models::assemble_part(model, models::HamiltonianPart::interaction);
    const Matrix ht = models::assemble(model);
    const evolution::HermitianEigen eig0(h0);
    const evolution::HermitianEigen eig_t(ht);

    SweepTable table;
    for (double t : times) {
        const auto u_i = evolution::interaction_propagator(eig0, eig_t, t, model.name);
        const Matrix truncated = evolution::dyson_truncated(h0, hi, t, order, quadrature_steps);
        table.points.push_back({t, (u_i.matrix - truncated).norm()});
    }
    return table;
}

} // namespace

SweepTable time_sweep(const models::HamiltonianSpec& model, const std::vector<double>& times,
                      const Observable& observable, const SweepOptions& options) {
    require_times(times);
    SweepTable table;
    try {
        switch (observable.kind) {
            case ObservableKind::weight_amplitude:
                table = weight_amplitude_sweep(model, times, observable.weight);
                break;
            case ObservableKind::dyson_defect:
                table = dyson_defect_sweep(model, times, observable.dyson_order,
                                           options.quadrature_steps);
                break;
            case ObservableKind::factorization_residual: {
                for (double t : times) {
                    table.points.push_back(
                        {t, evolution::factorization_residual(model, t, options.rk4_steps, {},
                                                              /*allow_violation=*/true)});
                }
                break;
            }
            case ObservableKind::qecc_infidelity:
            case ObservableKind::unprotected_infidelity: {
                const auto code = qecc::CodeSpec::make(observable.code);
                Vector logical(2);
                logical << 1.0, 0.0;
                for (double t : times) {
                    const auto report = qecc::logical_fidelity_experiment(code, model, logical, t);
                    const double value = observable.kind == ObservableKind::qecc_infidelity
                                             ? report.protected_infidelity
                                             : report.unprotected_infidelity;
                    table.points.push_back({t, value});
                }
                break;
            }
        }
    } catch (const Error& err) {
        const double failing_t = table.points.empty()
                                     ? times.front()
                                     : times[std::min(table.points.size(), times.size() - 1)];
        std::ostringstream msg;
        msg << "time_sweep(" << observable.label() << ") failed at t = " << failing_t << ": "
            << err.what();
        throw ValidationError(msg.str());
    }
    table.observable_label = observable.label();
    table.model_name = model.name;
    if (model.preset) {
        table.metadata["preset"] = models::preset_name(model.preset->preset);
        table.metadata["g"] = std::to_string(model.preset->g);
        table.metadata["env_dim"] = std::to_string(model.preset->env_dim);
        table.metadata["n_qubits"] = std::to_string(model.preset->n_qubits);
    }
    return table;
}

ScalingFit fit_exponent(const SweepTable& table) {
    std::vector<double> xs, ys;
    for (const auto& p : table.points) {
        if (!(p.t > 0.0)) throw ValidationError("fit_exponent: non-positive sweep time");
        if (p.value > kNumericalZero) {
            xs.push_back(std::log(p.t));
            ys.push_back(std::log(p.value));
        }
    }
    if (xs.size() < 4) {
        throw InsufficientDataError("fit_exponent('" + table.observable_label + "'): only " +
                                    std::to_string(xs.size()) +
                                    " usable points (>= 4 required)");
    }
    const auto n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw InsufficientDataError("fit_exponent: degenerate time window");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double fit = intercept + slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }

    ScalingFit fit;
    fit.exponent = slope;
    fit.prefactor = std::exp(intercept);
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    fit.n_points_used = static_cast<int>(xs.size());
    fit.window_min = std::exp(xs.front());
    fit.window_max = std::exp(xs.back());
    return fit;
}

std::vector<double> log_spaced_times(double t_min, double t_max, int n_points) {
    if (!(t_min > 0.0) || !(t_max > t_min) || n_points < 2) {
        throw ValidationError("log_spaced_times: need 0 < t_min < t_max and n_points >= 2");
    }
    std::vector<double> times(static_cast<size_t>(n_points));
    const double ratio = std::log(t_max / t_min);
    for (int i = 0; i < n_points; ++i) {
        times[static_cast<size_t>(i)] =
            t_min * std::exp(ratio * static_cast<double>(i) / (n_points - 1));
    }
    times.back() = t_max;
    return times;
}

std::vector<double> linear_spaced_times(double t_min, double t_max, int n_points) {
    if (!(t_min > 0.0) || !(t_max > t_min) || n_points < 2) {
        throw ValidationError("linear_spaced_times: need 0 < t_min < t_max and n_points >= 2");
    }
    std::vector<double> times(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        times[static_cast<size_t>(i)] =
            t_min + (t_max - t_min) * static_cast<double>(i) / (n_points - 1);
    }
    times.back() = t_max;
    return times;
}

ModelKind model_kind_of(models::Preset preset) {
    switch (preset) {
        case models::Preset::independent: return ModelKind::independent;
        case models::Preset::incomplete_independent:
        case models::Preset::collective_dephasing:
        case models::Preset::collective_general: return ModelKind::no_qubit_interaction;
        case models::Preset::qubit_coupled_violating: return ModelKind::violating;
    }
    throw ValidationError("invalid preset enum value");
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::independent: return "independent";
        case ModelKind::no_qubit_interaction: return "no_qubit_interaction";
        case ModelKind::violating: return "violating";
    }
    return "no_qubit_interaction";
}

double weight_exponent_band(int weight) {
    if (weight <= 2) return 0.2;
    if (weight == 3) return 0.3;
    return 0.4;
}

namespace {

Verdict make_verdict(Claim claim, const std::string& label, const ScalingFit& fit, double target,
                     double band, Direction direction) {
    Verdict v;
    v.claim = claim;
    v.label = label;
    v.measured = fit;
    v.band = band;
    v.direction = direction;
    switch (direction) {
        case Direction::at_least:
            v.threshold = target - band;
            v.pass = fit.exponent >= v.threshold;
            break;
        case Direction::at_most:
            v.threshold = target + band;
            v.pass = fit.exponent <= v.threshold;
            break;
        case Direction::approx:
            v.threshold = target;
            v.pass = std::abs(fit.exponent - target) <= band;
            break;
    }
    return v;
}

int parse_weight_label(const std::string& label) {
    const std::string prefix = "weight_amplitude:";
    if (label.rfind(prefix, 0) != 0) return -1;
    try {
        return std::stoi(label.substr(prefix.size()));
    } catch (const std::exception&) {
        return -1;
    }
}

const ScalingFit& require_fit(const std::map<std::string, ScalingFit>& fits,
                              const std::string& label) {
    const auto it = fits.find(label);
    if (it == fits.end()) {
        throw ValidationError("independence_verdict: missing required fit '" + label + "'");
    }
    return it->second;
}

} // namespace

std::vector<Verdict> independence_verdict(const std::map<std::string, ScalingFit>& fits,
                                          ModelKind kind, double band_scale) {
    if (band_scale <= 0.0) throw ValidationError("band_scale must be positive");
    std::vector<Verdict> verdicts;

    if (kind == ModelKind::violating) {
        const auto& fit = require_fit(fits, "weight_amplitude:2");
        verdicts.push_back(make_verdict(Claim::custom,
                                        "weight_amplitude:2 (condition violated, correlated "
                                        "errors at first order)",
                                        fit, 1.0, 0.3 * band_scale, Direction::at_most));
        return verdicts;
    }

    require_fit(fits, "weight_amplitude:1");
    require_fit(fits, "weight_amplitude:2");

    for (const auto& [label, fit] : fits) {
        const int m = parse_weight_label(label);
        if (m == 1) {
            verdicts.push_back(make_verdict(Claim::weight1_linear, label, fit, 1.0,
                                            weight_exponent_band(1) * band_scale,
                                            Direction::approx));
        } else if (m >= 2) {
            if (kind == ModelKind::independent) {
                verdicts.push_back(make_verdict(Claim::independent_weight_k, label, fit,
                                                static_cast<double>(m),
                                                weight_exponent_band(m) * band_scale,
                                                Direction::at_least));
            } else {
                verdicts.push_back(make_verdict(Claim::weight_ge2_quadratic, label, fit, 2.0,
                                                weight_exponent_band(2) * band_scale,
                                                Direction::at_least));
            }
        } else if (label == "factorization_residual") {
            verdicts.push_back(make_verdict(Claim::factorization_quadratic, label, fit, 2.0,
                                            0.2 * band_scale, Direction::at_least));
        }
    }
    return verdicts;
}

} // namespace declab::scaling
