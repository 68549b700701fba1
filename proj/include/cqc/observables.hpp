#pragma once

// Region-resolved exchange-operator expectation and its flux.
//
// The observable is Re<psi_up|psi_dn> for a symmetric superposition of a
// logic-0 branch (up) and a logic-1 branch (down) of the same cavity, split
// by region: Alice's side, between the barriers, and the transmission
// channel. Channel packets are paired by their (j_A, j_B) emission labels;
// each label names a unique path, and up-emissions are matched against
// down-occupancies at the same label. The 1/sqrt(2) branch factors cancel in
// the ratio convention used here, so a perfectly overlapping pair totals 1.

#include <cmath>
#include <vector>

#include "cqc/protocol.hpp"

namespace cqc {

enum class DecompositionMode {
    simulated,    // overlaps of the exact simulator amplitudes (default)
    limit_forms,  // double-limit closed forms, showing finite-n corrections
};

struct OverlapDecomposition {
    double alice_contrib = 0.0;
    double between_contrib = 0.0;
    double channel_contrib = 0.0;
    double total = 0.0;  // always the exact sum of the three contributions

    double defect() const { return std::fabs(total - 1.0); }
};

struct FluxPoint {
    int j_A = 0;
    double cumulative_channel = 0.0;  // channel overlap restricted to <= j_A
    double alice_term = 0.0;
    double running_total = 0.0;  // alice + between + cumulative at this cycle
};

struct FluxSeries {
    std::vector<FluxPoint> points;  // one per cycle, j_A = 1..N
};

struct MirrorResult {
    std::vector<double> exchange_series;  // index = cycle, size N+1
    OverlapDecomposition decomposition_at_end;
    double alice_region_overlap_at_end = 0.0;
};

// Region decomposition of Re<psi_up|psi_dn> at the final recorded cycle.
// Both traces must come from run_protocol with identical (n_A, n_B, N),
// trace_up with logic 0 and trace_down with logic 1.
OverlapDecomposition exchange_expectation(
    const SimTrace& trace_up, const SimTrace& trace_down,
    DecompositionMode mode = DecompositionMode::simulated);

// Time-resolved accumulation of the channel contribution, cycle by cycle.
FluxSeries flux_series(const SimTrace& trace_up, const SimTrace& trace_down);

// Sum_{j=1..n} (pi/2n) sin(j pi/2n): right-endpoint Riemann sum of
// int_0^1 sin(pi x/2) dx = 1, with O(1/n) excess.
double riemann_transfer_sum(int n);

// Sum_{j=1..n_cycles} eps_A sin(j eps_A) with eps_A = pi/(2 n_A):
// approaches 1 - cos(n_cycles eps_A) as n_A grows at fixed n_cycles/n_A.
double partial_transfer_sum(int n_cycles, int n_A);

// Two mirror branches of one cavity (m0 open = logic 0, m1 mirrored =
// logic 1) evolved for total_cycles, reporting the mirror exchange
// expectation over time. base supplies (n_A, n_B); its logic and cycle
// fields are overridden per branch. At total_cycles = 2 n_A the branches
// re-coincide at Alice with relative phase -1 while the channel pairing
// contributes +2, keeping the full total at 1.
MirrorResult mirror_superposition_run(const ProtocolConfig& base,
                                      int total_cycles);

}  // namespace cqc
