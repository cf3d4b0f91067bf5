// scaling.hpp — Time sweeps, log–log power-law fits, and verdicts against the
// order-of-t predictions

#pragma once

#include <map>
#include <string>
#include <vector>

#include "declab/model.hpp"

namespace declab::scaling {

// ------------------------------- Tables -------------------------------------

struct SweepPoint {
    double t = 0.0;
    double value = 0.0;
};

struct SweepTable {
    std::string observable_label;
    std::vector<SweepPoint> points;
    std::string model_name;
    std::map<std::string, std::string> metadata;

    // t strictly increasing and positive, >= 4 points, finite values.
    void validate() const;
};

struct ScalingFit {
    double exponent = 0.0;   // p in value ≈ C t^p
    double prefactor = 0.0;  // C
    double r_squared = 0.0;
    int n_points_used = 0;
    double window_min = 0.0;
    double window_max = 0.0;
};

enum class Claim {
    weight1_linear,
    weight_ge2_quadratic,
    independent_weight_k,
    factorization_quadratic,
    custom
};

enum class Direction { at_least, at_most, approx };

std::string claim_name(Claim claim);
std::string direction_name(Direction direction);

struct Verdict {
    Claim claim = Claim::custom;
    std::string label;  // observable the verdict is about
    bool pass = false;
    ScalingFit measured;
    double threshold = 0.0;  // effective bound (band already applied); target for approx
    double band = 0.0;       // half-width used by approx
    Direction direction = Direction::at_least;
};

// ----------------------------- Observables ----------------------------------

enum class ObservableKind {
    weight_amplitude,        // A(m) of the interaction-picture propagator
    factorization_residual,  // ‖U_I − Π U_I^α‖_F
    dyson_defect,            // ‖U_I − truncated Dyson‖_F
    qecc_infidelity,         // protected logical infidelity
    unprotected_infidelity   // single bare qubit baseline
};

struct Observable {
    ObservableKind kind = ObservableKind::weight_amplitude;
    int weight = 1;                  // weight_amplitude
    int dyson_order = 2;             // dyson_defect
    std::string code = "phaseflip3"; // qecc_infidelity

    // Canonical label: "weight_amplitude:1", "dyson_defect:2",
    // "qecc_infidelity:phaseflip3", "factorization_residual", ...
    std::string label() const;
    static Observable parse(const std::string& text);
};

struct SweepOptions {
    int rk4_steps = 256;        // single-factor propagators
    int quadrature_steps = 64;  // Dyson cross-checks
};

// Evaluates the observable at each time with exact propagators; deterministic
// for a fixed model and time list.
SweepTable time_sweep(const models::HamiltonianSpec& model, const std::vector<double>& times,
                      const Observable& observable, const SweepOptions& options = {});

// ------------------------------- Fitting ------------------------------------

// Ordinary least squares on (ln t, ln value). Values at or below 1e-14 count as
// numerical zeros and are dropped; fewer than 4 usable points is an error.
ScalingFit fit_exponent(const SweepTable& table);

std::vector<double> log_spaced_times(double t_min, double t_max, int n_points);
std::vector<double> linear_spaced_times(double t_min, double t_max, int n_points);

// ------------------------------- Verdicts -----------------------------------

enum class ModelKind { independent, no_qubit_interaction, violating };

ModelKind model_kind_of(models::Preset preset);
std::string model_kind_name(ModelKind kind);

// Tolerance band for "exponent ≈ m": 0.2 up to m = 2, 0.3 for m = 3, 0.4 beyond.
double weight_exponent_band(int weight);

// Applies the per-model-kind thresholds to fitted exponents, keyed by observable
// label. `band_scale` widens every tolerance band (quick/CI mode).
std::vector<Verdict> independence_verdict(const std::map<std::string, ScalingFit>& fits,
                                          ModelKind kind, double band_scale = 1.0);

} // namespace declab::scaling
