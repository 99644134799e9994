#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abclab/geometry.hpp"
#include "abclab/mesh.hpp"
#include "abclab/potential.hpp"
#include "abclab/spectrum.hpp"

namespace abclab::harness {

uint64_t fnv1a(const std::string& s);

// Plain `key = value` files with optional [section] headers, # or ; comments.
struct Config {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string raw;

    bool has(const std::string& sec, const std::string& key) const;
    std::string get(const std::string& sec, const std::string& key, const std::string& def = "") const;
    double get_num(const std::string& sec, const std::string& key, double def) const;
    int get_int(const std::string& sec, const std::string& key, int def) const;
    std::vector<double> get_list(const std::string& sec, const std::string& key) const;
    uint64_t hash() const { return fnv1a(raw); }
};

Config parse_config(const std::string& text);
Config load_config_file(const std::string& path);

// ---- rate fitting ----

struct FitResult {
    double exponent = 0;
    double coefficient = 0;  // |delta| ~ coefficient * eps^exponent
    int sign = 0;            // shared sign of the fitted deltas
    int points_used = 0;
    bool ok = false;
};

// log-log least squares of |delta| against eps; needs at least three points
// of one sign above the noise floor
FitResult fit_rate(const std::vector<double>& eps, const std::vector<double>& delta, double noise_floor);

// eliminate the h^order error term from values at h and h/2
double richardson(double f_h, double f_h2, double order = 2.0);

// ---- experiment descriptions ----

struct Problem {
    DomainSpec dom;
    bool has_poles = false;
    PoleConfiguration poles;

    double h = 0.05;
    int refine = 1;  // extra uniformly refined level for Richardson
    double tol = 1e-10;
    bool structured = false;  // structured rectangle grid (no cracks only)

    int n0 = 1;  // 1-based index of the tracked mode
    int nev = 0; // 0 = n0 + 2
    int mode_p = 0, mode_q = 0;  // analytic rectangle reference mode

    std::vector<double> eps;

    double blow_rho = 8;  // extrapolation uses blow_rho and 2*blow_rho
    double blow_h = 0.3;
    int prof_m = 0;  // 0 = fit from the limit eigenfunction
    double prof_beta = 0, prof_alpha0 = 0;

    int nzeta = 12;
    int hardy_k1 = 1;
    std::vector<double> hardy_r{1.0, 2.0, 4.0};

    uint64_t config_hash = 0;
};

Problem parse_problem(const Config& cfg);

// ---- analytic reference data (rectangle modes) ----

struct AnalyticMode {
    bool available = false;
    double lam = 0;
    int m = 0;             // vanishing order at the collision point
    double l0 = 0, l1 = 0; // Taylor data feeding the two-pole coefficient
    double beta = 0, alpha0 = 0;
    std::function<double(const Vec2&)> value;   // in collision-centered coordinates
    std::function<Vec2(const Vec2&)> gradient;
};

AnalyticMode analytic_mode(const Problem& p);

// ---- drivers ----

struct LimitLevel {
    double h = 0;
    size_t nv = 0;
    std::vector<double> values;
    double lam = 0;  // values[n0-1]
    double gap = 0;
    double residual = 0;
};

struct LimitOutcome {
    std::vector<LimitLevel> levels;
    double lam_rich = 0;
    spectrum::LocalFit local;  // expansion of the tracked mode at the finest level
};

LimitOutcome run_limit(const Problem& p);

struct SweepRow {
    double eps = 0;
    double h = 0;  // finest level
    size_t nv = 0;
    double lam0 = 0, lam_eps = 0;  // finest level
    double dlam_raw = 0;           // finest level same-mesh difference
    double dlam = 0;               // Richardson over the levels
    double align = 0;              // (v_eps, v0)_M after sign fixing
    double E_weak = 0, E_quad = 0, L_v0 = 0;
    double identity_weak = 0, identity_quad = 0;
    double normV2 = 0;
    double ratio_thm = 0;  // |dlam - 2(E_weak - L_v0)| / |dlam|, extrapolated
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    FitResult fit;            // on the extrapolated differences
    bool analytic = false;
    double lam0_exact = 0;
    int m = 1;
    double beta = 0;
    double coeff_pred = 0;    // closed-form pair coefficient when analytic
    spectrum::LocalFit local; // fitted profile when not analytic
};

SweepOutcome run_sweep(const Problem& p, bool with_potentials);

struct BlowupOutcome {
    BlowupProfile prof;
    std::vector<double> rhos;
    std::vector<potential::BlowupResult> results;
    double E_star = 0;  // 2 E(2 rho) - E(rho)
};

BlowupOutcome run_blowup(const Problem& p);
BlowupOutcome run_blowup(const Problem& p, const BlowupProfile& prof);

struct HardyRow {
    int k1 = 0;
    double r = 0, h = 0, lambda = 0;
};

std::vector<HardyRow> run_hardy(const Problem& p);

potential::ScanResult run_scan(const Problem& p);

// ---- CLI entry ----

struct RunOptions {
    std::string kind;
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    double h_override = -1;
    std::vector<double> eps_override;
};

int run(const RunOptions& opt);

}  // namespace abclab::harness
