#include "cqc/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "cqc/dd.hpp"

namespace cqc {

const char* to_string(SweepTarget target) {
    switch (target) {
        case SweepTarget::channel_prob_logic0: return "channel_prob_logic0";
        case SweepTarget::channel_prob_logic1: return "channel_prob_logic1";
        case SweepTarget::exchange_total: return "exchange_total";
        case SweepTarget::alice_contrib: return "alice_contrib";
        case SweepTarget::channel_contrib: return "channel_contrib";
        case SweepTarget::riemann_sum: return "riemann_sum";
    }
    throw std::invalid_argument("unknown sweep target");
}

SweepTarget sweep_target_from_string(const std::string& name) {
    for (SweepTarget t :
         {SweepTarget::channel_prob_logic0, SweepTarget::channel_prob_logic1,
          SweepTarget::exchange_total, SweepTarget::alice_contrib,
          SweepTarget::channel_contrib, SweepTarget::riemann_sum})
        if (name == to_string(t)) return t;
    throw std::invalid_argument("unknown sweep target: " + name);
}

namespace {

double quarter_over(int n) { return to_double(dd_pi / dd(2.0 * n)); }

SweepRow compute_row(const SweepSpec& spec, int n_A, int n_B) {
    SweepRow row;
    row.n_A = n_A;
    row.n_B = n_B;
    row.ratio = static_cast<double>(n_A) / n_B;

    int N = n_A;
    if (spec.cycles_rule == CyclesRule::fraction) {
        if (!(spec.fraction >= 0.0) || !std::isfinite(spec.fraction))
            throw std::invalid_argument(
                "cycles fraction must be nonnegative and finite");
        N = static_cast<int>(std::lround(spec.fraction * n_A));
    }
    const double eps_A = quarter_over(n_A);
    const double pi = to_double(dd_pi);

    auto run_logic = [&](int logic) {
        ProtocolConfig cfg;
        cfg.n_A = n_A;
        cfg.n_B = n_B;
        cfg.cycles = N;
        cfg.logic = logic;
        return run_protocol(cfg, TraceDetail::boundary);
    };

    switch (spec.target) {
        case SweepTarget::channel_prob_logic0:
            row.measured = run_logic(0).ledger_norm;
            row.reference = (pi * pi / 8.0) * row.ratio;
            break;
        case SweepTarget::channel_prob_logic1:
            row.measured = run_logic(1).ledger_norm;
            row.reference = (pi / 2.0) * eps_A;
            break;
        case SweepTarget::exchange_total:
        case SweepTarget::alice_contrib:
        case SweepTarget::channel_contrib: {
            SimTrace up = run_logic(0);
            SimTrace dn = run_logic(1);
            OverlapDecomposition d = exchange_expectation(up, dn);
            if (spec.target == SweepTarget::exchange_total) {
                row.measured = d.total;
                row.reference = 1.0;
            } else if (spec.target == SweepTarget::alice_contrib) {
                row.measured = d.alice_contrib;
                row.reference =
                    std::cos(N * eps_A) * std::pow(std::cos(eps_A), N);
            } else {
                row.measured = d.channel_contrib;
                row.reference = 1.0 - std::cos(N * eps_A);
            }
            break;
        }
        case SweepTarget::riemann_sum:
            row.measured = riemann_transfer_sum(n_A);
            row.reference = 1.0;
            break;
    }
    row.deviation = row.measured - row.reference;
    return row;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    SweepTable table;
    table.target = spec.target;
    table.rows.reserve(spec.pairs.size());
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
        auto [n_A, n_B] = spec.pairs[i];
        std::string where = "sweep row " + std::to_string(i) + " (n_A=" +
                            std::to_string(n_A) + ", n_B=" +
                            std::to_string(n_B) + ")";
        if (n_A < 2 || n_B < n_A)
            throw std::invalid_argument(where +
                                        ": pairs must satisfy n_B >= n_A >= 2");
        try {
            table.rows.push_back(compute_row(spec, n_A, n_B));
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
    }
    return table;
}

FitResult convergence_fit(const SweepTable& table, FitAbscissa abscissa) {
    FitResult fit;
    const std::size_t n = table.rows.size();
    if (n < 3) {
        fit.reason = "fewer than 3 rows";
        return fit;
    }
    std::vector<double> lx, ly;
    lx.reserve(n);
    ly.reserve(n);
    int sign = 0;
    for (const SweepRow& r : table.rows) {
        if (r.deviation == 0.0) {
            fit.reason = "zero deviation present";
            return fit;
        }
        int s = r.deviation > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) {
            fit.reason = "deviations change sign";
            return fit;
        }
        double x;
        switch (abscissa) {
            case FitAbscissa::eps_A: x = quarter_over(r.n_A); break;
            case FitAbscissa::ratio_eps: x = r.ratio; break;
            case FitAbscissa::inv_n_A: x = 1.0 / r.n_A; break;
            default: throw std::invalid_argument("unknown fit abscissa");
        }
        lx.push_back(std::log(x));
        ly.push_back(std::log(std::fabs(r.deviation)));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        fit.reason = "abscissa does not vary";
        return fit;
    }
    fit.fittable = true;
    fit.order = sxy / sxx;
    fit.constant = std::exp(my - fit.order * mx);
    double ssres = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double resid = ly[i] - (my + fit.order * (lx[i] - mx));
        ssres += resid * resid;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ssres / syy : 1.0;
    return fit;
}

std::vector<std::pair<int, int>> default_ladder(int k_max) {
    if (k_max < 0 || k_max > 3)
        throw std::invalid_argument(
            "default_ladder: k_max must lie in 0..3 (the largest rung is "
            "already a ~3e7 sub-step run)");
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k <= k_max; ++k)
        pairs.emplace_back(25 << k, 2500 << (2 * k));
    return pairs;
}

}  // namespace cqc
