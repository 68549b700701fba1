#pragma once

// Parameter sweeps along the double-limit sequence eps_A -> 0,
// eps_B/eps_A -> 0, with per-row deviations against closed-form references
// and a log-log convergence-order fit.

#include <string>
#include <utility>
#include <vector>

#include "cqc/observables.hpp"

namespace cqc {

enum class SweepTarget {
    channel_prob_logic0,  // escaped probability, Bob open; ref (pi^2/8) n_A/n_B
    channel_prob_logic1,  // escaped probability, mirrored; ref pi*eps_A/2
    exchange_total,       // decomposition total; ref 1
    alice_contrib,        // ref cos(N eps_A) cos^N(eps_A)
    channel_contrib,      // ref 1 - cos(N eps_A)
    riemann_sum,          // riemann_transfer_sum(n_A); ref 1
};

const char* to_string(SweepTarget target);
SweepTarget sweep_target_from_string(const std::string& name);

enum class CyclesRule { full, fraction };  // N = n_A, or N = round(f * n_A)

struct SweepSpec {
    std::vector<std::pair<int, int>> pairs;  // (n_A, n_B), n_B >= n_A >= 2
    SweepTarget target = SweepTarget::exchange_total;
    CyclesRule cycles_rule = CyclesRule::full;
    double fraction = 1.0;  // only read when cycles_rule == fraction
};

struct SweepRow {
    int n_A = 0;
    int n_B = 0;
    double ratio = 0.0;  // eps_B/eps_A = n_A/n_B
    double measured = 0.0;
    double reference = 0.0;  // closed form only, never a previous run
    double deviation = 0.0;  // measured - reference, signed
};

struct SweepTable {
    SweepTarget target = SweepTarget::exchange_total;
    std::vector<SweepRow> rows;
};

// One fresh deterministic simulation per pair; rows are independent, so any
// permutation of the spec permutes rows with identical values.
SweepTable run_sweep(const SweepSpec& spec);

enum class FitAbscissa { eps_A, ratio_eps, inv_n_A };

struct FitResult {
    bool fittable = false;
    std::string reason;  // set when unfittable; empty otherwise
    double order = 0.0;
    double constant = 0.0;
    double r_squared = 0.0;
};

// Least squares of log|deviation| against log(abscissa): deviation ~
// constant * x^order. Degenerate tables (fewer than 3 rows, zero deviations,
// mixed signs, constant abscissa) are reported as unfittable, not thrown.
FitResult convergence_fit(const SweepTable& table, FitAbscissa abscissa);

// (25*2^k, 2500*4^k) for k = 0..k_max, k_max <= 3.
std::vector<std::pair<int, int>> default_ladder(int k_max);

}  // namespace cqc
