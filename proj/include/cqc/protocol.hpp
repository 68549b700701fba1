#pragma once

// Discrete-event simulation of the chained-Zeno cavity protocols.
//
// The full protocol is a cavity split by two barriers: Alice's region, the
// region between barriers A and B, and the transmission channel past B.
// Barrier A acts once per outer cycle; barrier B acts n_B times per cycle.
// Bob encodes logic 0 by leaving his end open (amplitude past B escapes and
// never returns) and logic 1 by mirroring it (amplitude coherently swings
// into the channel mode and is removed at the end of each cycle, so nothing
// reflects left). States are mode amplitudes indexed by region and cycle, not
// spatial wavefunctions; the cavity length L and speed v survive only as the
// time-unit metadata of one outer cycle, L/v.

#include <complex>
#include <optional>
#include <vector>

#include "cqc/amplitude.hpp"

namespace cqc {

enum class TraceDetail {
    full,      // snapshot after barrier A and after every inner sub-step
    boundary,  // snapshots at outer-cycle boundaries only (identical dynamics)
};

enum class PacketStatus { escaped, channel_occupancy };

struct ProtocolConfig {
    int n_A = 100;           // eps_A = pi / (2 n_A)
    int n_B = 10000;         // eps_B = pi / (2 n_B), so n_B * eps_B = pi/2
    int cycles = -1;         // outer cycles N; negative means "default to n_A"
    int logic = 0;           // Bob's bit: 0 = end open, 1 = end mirrored
    double length_scale = 1.0;
    double speed = 1.0;

    double eps_A() const;
    double eps_B() const;
    ProtocolConfig normalized() const;  // resolves the cycles default
    void validate() const;              // throws std::invalid_argument
};

struct PacketRecord {
    int j_A = 0;                   // outer-cycle label
    std::optional<int> j_B;        // inner-bounce label; absent for the
                                   // logic-1 end-of-cycle escape
    ComplexAmp amplitude;
    PacketStatus status = PacketStatus::escaped;
};

struct Snapshot {
    int j_A = 0;
    int j_B = 0;  // 0 = just after the barrier-A step of cycle j_A
    ComplexAmp alice, inner, channel_local;
};

struct CycleState {
    ComplexAmp alice, inner;
};

struct SimTrace {
    ProtocolConfig config;  // normalized; for toy runs see toy_epsilon
    TraceDetail detail = TraceDetail::full;
    bool is_toy = false;
    double toy_epsilon = 0.0;

    // full detail: cycles * (1 + n_B) entries (toy: one per lap).
    std::vector<Snapshot> snapshots;
    // always present: state after each completed cycle, entry 0 = initial.
    std::vector<CycleState> boundaries;
    // escaped packets, append-only, in emission order.
    std::vector<PacketRecord> ledger;
    // logic 1: channel occupancy per (j_A, j_B), row-major j_A-major.
    // logic 0 occupancies are the escaped records themselves.
    std::vector<ComplexAmp> occupancy;

    double ledger_norm = 0.0;              // sum of |amplitude|^2 over ledger
    double max_conservation_error = 0.0;   // max |total probability - 1| seen
                                           // over all sub-steps of the run

    int cycle_count() const { return static_cast<int>(boundaries.size()) - 1; }

    // Channel amplitude under label (j_A, j_B), either logic.
    ComplexAmp channel_amp(int j_A, int j_B) const;
};

// Single-barrier protocol: one barrier between Alice and Bob, j laps.
// bob_mirror = 1 keeps the pair (alice, bob) closed and coherently rotating;
// bob_mirror = 0 lets each lap's transmitted amplitude escape.
SimTrace run_toy(double epsilon, int laps, int bob_mirror,
                 TraceDetail detail = TraceDetail::full);

SimTrace run_protocol(const ProtocolConfig& config,
                      TraceDetail detail = TraceDetail::full);

enum class Region { alice, between, channel };
enum class Form { exact, limit };

// Closed-form region amplitudes for cycle j_A, bounce j_B. Form::exact is the
// finite-parameter product; Form::limit is its double-limit leading order.
ComplexAmp closed_form_amplitude(Region region, int logic, int j_A, int j_B,
                                 double eps_A, double eps_B, Form form);

struct ChannelProbability {
    double measured = 0.0;
    double closed_form = 0.0;
    double ratio = 0.0;
};

// Probability that ever entered the transmission channel, against the
// counterfactuality closed form: (pi^2/8)(eps_B/eps_A) for logic 0, and the
// bound pi*eps_A/2 for logic 1 (measured <= bound). Requires a full-length
// run (N = n_A); an N = 0 trace degenerates to measured = 0.
ChannelProbability channel_probability(const SimTrace& trace);

// 1 if the Alice-side probability at detection_cycle exceeds 1/2, else 0.
// At detection_cycle = n_A this recovers Bob's logic bit in the double-limit
// regime.
int decode_bit(const SimTrace& trace, int detection_cycle);

}  // namespace cqc
