#include "cqc/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqc/accum.hpp"
#include "cqc/dd.hpp"

namespace cqc {

namespace {

double re_conj_prod(ComplexAmp a, ComplexAmp b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

void require_pair(const SimTrace& up, const SimTrace& dn) {
    if (up.is_toy || dn.is_toy)
        throw std::invalid_argument(
            "exchange pairing requires two-barrier protocol traces");
    if (up.config.logic != 0 || dn.config.logic != 1)
        throw std::invalid_argument(
            "exchange pairing requires trace_up with logic 0 and trace_down "
            "with logic 1");
    if (up.config.n_A != dn.config.n_A || up.config.n_B != dn.config.n_B ||
        up.cycle_count() != dn.cycle_count())
        throw std::invalid_argument(
            "exchange pairing requires identical (n_A, n_B, cycles)");
}

// Single pass over both traces: per-cycle prefix sums of the channel-label
// pairing plus the per-boundary Alice and between-region overlaps.
struct PairingScan {
    std::vector<double> channel_prefix;  // [J], J = 0..N
    std::vector<double> alice_ov;        // [J]
    std::vector<double> between_ov;      // [J]
};

PairingScan scan_pair(const SimTrace& up, const SimTrace& dn) {
    const int N = up.cycle_count();
    const int n_B = up.config.n_B;

    PairingScan out;
    out.channel_prefix.resize(static_cast<std::size_t>(N) + 1);
    out.alice_ov.resize(static_cast<std::size_t>(N) + 1);
    out.between_ov.resize(static_cast<std::size_t>(N) + 1);

    CompensatedSum channel;
    out.channel_prefix[0] = 0.0;
    for (int j_A = 1; j_A <= N; ++j_A) {
        const std::size_t row = static_cast<std::size_t>(j_A - 1) * n_B;
        const PacketRecord* up_row = up.ledger.data() + row;
        const ComplexAmp* dn_row = dn.occupancy.data() + row;
        for (int j_B = 0; j_B < n_B; ++j_B)
            channel.add(re_conj_prod(up_row[j_B].amplitude, dn_row[j_B]));
        out.channel_prefix[static_cast<std::size_t>(j_A)] = channel.value();
    }
    for (int J = 0; J <= N; ++J) {
        const CycleState& u = up.boundaries[static_cast<std::size_t>(J)];
        const CycleState& d = dn.boundaries[static_cast<std::size_t>(J)];
        out.alice_ov[static_cast<std::size_t>(J)] = re_conj_prod(u.alice, d.alice);
        out.between_ov[static_cast<std::size_t>(J)] = re_conj_prod(u.inner, d.inner);
    }
    return out;
}

OverlapDecomposition decomposition_at(const PairingScan& scan, int J) {
    OverlapDecomposition out;
    out.alice_contrib = scan.alice_ov[static_cast<std::size_t>(J)];
    out.between_contrib = scan.between_ov[static_cast<std::size_t>(J)];
    out.channel_contrib = scan.channel_prefix[static_cast<std::size_t>(J)];
    out.total = out.alice_contrib + out.between_contrib + out.channel_contrib;
    return out;
}

}  // namespace

OverlapDecomposition exchange_expectation(const SimTrace& trace_up,
                                          const SimTrace& trace_down,
                                          DecompositionMode mode) {
    require_pair(trace_up, trace_down);
    const int N = trace_up.cycle_count();
    if (mode == DecompositionMode::limit_forms) {
        const ProtocolConfig& cfg = trace_up.config;
        double eps_A = cfg.eps_A(), eps_B = cfg.eps_B();
        OverlapDecomposition out;
        out.alice_contrib = std::cos(N * eps_A);
        out.between_contrib =
            std::sin(N * eps_A) * eps_A * std::cos(cfg.n_B * eps_B);
        out.channel_contrib =
            partial_transfer_sum(N, cfg.n_A) * riemann_transfer_sum(cfg.n_B);
        out.total =
            out.alice_contrib + out.between_contrib + out.channel_contrib;
        return out;
    }
    return decomposition_at(scan_pair(trace_up, trace_down), N);
}

FluxSeries flux_series(const SimTrace& trace_up, const SimTrace& trace_down) {
    require_pair(trace_up, trace_down);
    const int N = trace_up.cycle_count();
    PairingScan scan = scan_pair(trace_up, trace_down);

    FluxSeries series;
    series.points.reserve(static_cast<std::size_t>(N));
    for (int J = 1; J <= N; ++J) {
        OverlapDecomposition d = decomposition_at(scan, J);
        series.points.push_back(
            {J, d.channel_contrib, d.alice_contrib, d.total});
    }
    return series;
}

double riemann_transfer_sum(int n) {
    if (n < 1)
        throw std::invalid_argument("riemann_transfer_sum: n must be >= 1");
    double h = to_double(dd_pi / dd(2.0 * n));
    CompensatedSum sum;
    for (int j = 1; j <= n; ++j) sum.add(h * std::sin(j * h));
    return sum.value();
}

double partial_transfer_sum(int n_cycles, int n_A) {
    if (n_A < 1)
        throw std::invalid_argument("partial_transfer_sum: n_A must be >= 1");
    if (n_cycles < 0)
        throw std::invalid_argument(
            "partial_transfer_sum: n_cycles must be >= 0");
    double eps_A = to_double(dd_pi / dd(2.0 * n_A));
    CompensatedSum sum;
    for (int j = 1; j <= n_cycles; ++j) sum.add(eps_A * std::sin(j * eps_A));
    return sum.value();
}

MirrorResult mirror_superposition_run(const ProtocolConfig& base,
                                      int total_cycles) {
    if (total_cycles < 0)
        throw std::invalid_argument(
            "mirror_superposition_run: total_cycles must be >= 0");
    ProtocolConfig open = base, mirrored = base;
    open.logic = 0;
    mirrored.logic = 1;
    open.cycles = mirrored.cycles = total_cycles;
    SimTrace up = run_protocol(open, TraceDetail::boundary);
    SimTrace dn = run_protocol(mirrored, TraceDetail::boundary);

    PairingScan scan = scan_pair(up, dn);
    MirrorResult out;
    out.exchange_series.reserve(static_cast<std::size_t>(total_cycles) + 1);
    for (int J = 0; J <= total_cycles; ++J)
        out.exchange_series.push_back(decomposition_at(scan, J).total);
    out.decomposition_at_end = decomposition_at(scan, total_cycles);
    out.alice_region_overlap_at_end = out.decomposition_at_end.alice_contrib;
    return out;
}

}  // namespace cqc
