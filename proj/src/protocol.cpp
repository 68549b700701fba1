#include "cqc/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqc/accum.hpp"
#include "cqc/dd.hpp"

namespace cqc {

namespace {

ComplexAmp as_amp(const ddcomplex& z) {
    return {to_double(z.re), to_double(z.im)};
}

// Tracks max |1 - total recorded probability| across every sub-step. The
// check runs on the rounded doubles actually stored in the trace, so it
// bounds what any consumer of the trace can observe.
struct ConservationWatch {
    double max_err = 0.0;

    void check(const ComplexAmp& alice, const ComplexAmp& inner,
               const ComplexAmp& channel, double escaped) {
        double total =
            std::norm(alice) + std::norm(inner) + std::norm(channel) + escaped;
        double err = std::fabs(total - 1.0);
        if (err > max_err) max_err = err;
    }
};

}  // namespace

double ProtocolConfig::eps_A() const {
    return to_double(dd_pi / dd(2.0 * static_cast<double>(n_A)));
}

double ProtocolConfig::eps_B() const {
    return to_double(dd_pi / dd(2.0 * static_cast<double>(n_B)));
}

ProtocolConfig ProtocolConfig::normalized() const {
    ProtocolConfig out = *this;
    if (out.cycles < 0) out.cycles = out.n_A;
    return out;
}

void ProtocolConfig::validate() const {
    if (n_A < 1) throw std::invalid_argument("n_A must be a positive integer");
    if (n_B < 1) throw std::invalid_argument("n_B must be a positive integer");
    if (logic != 0 && logic != 1)
        throw std::invalid_argument("logic must be 0 or 1");
    if (!(length_scale > 0.0) || !std::isfinite(length_scale))
        throw std::invalid_argument("length_scale must be positive and finite");
    if (!(speed > 0.0) || !std::isfinite(speed))
        throw std::invalid_argument("speed must be positive and finite");
}

ComplexAmp SimTrace::channel_amp(int j_A, int j_B) const {
    if (is_toy)
        throw std::invalid_argument(
            "channel_amp: per-bounce labels exist only for the two-barrier "
            "protocol");
    if (j_A < 1 || j_A > cycle_count() || j_B < 1 || j_B > config.n_B)
        throw std::out_of_range("channel_amp: label (" + std::to_string(j_A) +
                                ", " + std::to_string(j_B) + ") out of range");
    std::size_t idx = static_cast<std::size_t>(j_A - 1) * config.n_B + (j_B - 1);
    if (config.logic == 0) return ledger[idx].amplitude;
    return occupancy[idx];
}

SimTrace run_protocol(const ProtocolConfig& config, TraceDetail detail) {
    ProtocolConfig cfg = config.normalized();
    cfg.validate();
    const int N = cfg.cycles;
    const int n_B = cfg.n_B;
    const bool full = detail == TraceDetail::full;
    const bool mirrored = cfg.logic == 1;

    Barrier barrier_a = Barrier::quarter_fraction(cfg.n_A);
    Barrier barrier_b = Barrier::quarter_fraction(cfg.n_B);
    const dd cA = barrier_a.cos_dd(), sA = barrier_a.sin_dd();
    const dd cB = barrier_b.cos_dd(), sB = barrier_b.sin_dd();

    SimTrace trace;
    trace.config = cfg;
    trace.detail = detail;
    trace.boundaries.reserve(static_cast<std::size_t>(N) + 1);
    if (full)
        trace.snapshots.reserve(static_cast<std::size_t>(N) * (1 + n_B));
    if (mirrored) {
        trace.ledger.reserve(static_cast<std::size_t>(N));
        trace.occupancy.assign(static_cast<std::size_t>(N) * n_B, ComplexAmp{});
    } else {
        trace.ledger.reserve(static_cast<std::size_t>(N) * n_B);
    }

    ddcomplex alice{dd(1.0), dd(0.0)};
    ddcomplex inner;
    ddcomplex channel;
    CompensatedSum escaped;
    ConservationWatch watch;

    trace.boundaries.push_back({ComplexAmp{1.0, 0.0}, ComplexAmp{}});

    for (int j_A = 1; j_A <= N; ++j_A) {
        dd_rotate(alice, inner, cA, sA);
        ComplexAmp al = as_amp(alice);
        if (full) trace.snapshots.push_back({j_A, 0, al, as_amp(inner), {}});
        watch.check(al, as_amp(inner), {}, escaped.value());

        for (int j_B = 1; j_B <= n_B; ++j_B) {
            if (mirrored) {
                dd_rotate(inner, channel, cB, sB);
                ComplexAmp ch = as_amp(channel);
                trace.occupancy[static_cast<std::size_t>(j_A - 1) * n_B +
                                (j_B - 1)] = ch;
                ComplexAmp in = as_amp(inner);
                if (full) trace.snapshots.push_back({j_A, j_B, al, in, ch});
                watch.check(al, in, ch, escaped.value());
            } else {
                // Transmitted fraction i*sin(eps_B) leaves through Bob's open
                // end and never returns; the rest stays between the barriers.
                dd emit_re = -(sB * inner.im);
                dd emit_im = sB * inner.re;
                ComplexAmp emit{to_double(emit_re), to_double(emit_im)};
                trace.ledger.push_back(
                    {j_A, j_B, emit, PacketStatus::escaped});
                escaped.add(std::norm(emit));
                inner.re = cB * inner.re;
                inner.im = cB * inner.im;
                ComplexAmp in = as_amp(inner);
                if (full) trace.snapshots.push_back({j_A, j_B, al, in, {}});
                watch.check(al, in, {}, escaped.value());
            }
        }

        if (mirrored) {
            // n_B * eps_B = pi/2, so the inner amplitude has swung entirely
            // into the channel mode; it is taken out before the next cycle.
            ComplexAmp ch = as_amp(channel);
            trace.ledger.push_back(
                {j_A, std::nullopt, ch, PacketStatus::escaped});
            escaped.add(std::norm(ch));
            channel = ddcomplex{};
            watch.check(al, as_amp(inner), {}, escaped.value());
        }
        trace.boundaries.push_back({as_amp(alice), as_amp(inner)});
    }

    trace.ledger_norm = escaped.value();
    trace.max_conservation_error = watch.max_err;
    return trace;
}

SimTrace run_toy(double epsilon, int laps, int bob_mirror, TraceDetail detail) {
    if (!(epsilon > 0.0) || !(epsilon <= to_double(dd_half_pi)))
        throw std::invalid_argument("run_toy: epsilon must lie in (0, pi/2]");
    if (laps < 0)
        throw std::invalid_argument("run_toy: laps must be nonnegative");
    if (bob_mirror != 0 && bob_mirror != 1)
        throw std::invalid_argument("run_toy: bob_mirror must be 0 or 1");

    Barrier barrier{epsilon};
    const dd c = barrier.cos_dd(), s = barrier.sin_dd();
    const bool full = detail == TraceDetail::full;

    SimTrace trace;
    trace.is_toy = true;
    trace.toy_epsilon = epsilon;
    trace.config.n_A = 0;
    trace.config.n_B = 0;
    trace.config.cycles = laps;
    trace.config.logic = bob_mirror;
    trace.detail = detail;
    trace.boundaries.reserve(static_cast<std::size_t>(laps) + 1);
    if (full) trace.snapshots.reserve(static_cast<std::size_t>(laps));
    if (bob_mirror == 0) trace.ledger.reserve(static_cast<std::size_t>(laps));

    ddcomplex alice{dd(1.0), dd(0.0)};
    ddcomplex bob;
    CompensatedSum escaped;
    ConservationWatch watch;

    trace.boundaries.push_back({ComplexAmp{1.0, 0.0}, ComplexAmp{}});

    for (int lap = 1; lap <= laps; ++lap) {
        if (bob_mirror == 1) {
            dd_rotate(alice, bob, c, s);
        } else {
            dd emit_re = -(s * alice.im);
            dd emit_im = s * alice.re;
            ComplexAmp emit{to_double(emit_re), to_double(emit_im)};
            trace.ledger.push_back({lap, std::nullopt, emit,
                                    PacketStatus::escaped});
            escaped.add(std::norm(emit));
            alice.re = c * alice.re;
            alice.im = c * alice.im;
        }
        ComplexAmp al = as_amp(alice), bo = as_amp(bob);
        if (full) trace.snapshots.push_back({lap, 0, al, bo, {}});
        watch.check(al, bo, {}, escaped.value());
        trace.boundaries.push_back({al, bo});
    }

    trace.ledger_norm = escaped.value();
    trace.max_conservation_error = watch.max_err;
    return trace;
}

ComplexAmp closed_form_amplitude(Region region, int logic, int j_A, int j_B,
                                 double eps_A, double eps_B, Form form) {
    if (logic != 0 && logic != 1)
        throw std::invalid_argument("closed_form_amplitude: logic must be 0 or 1");
    if (j_A < 0 || j_B < 0)
        throw std::invalid_argument(
            "closed_form_amplitude: labels must be nonnegative");
    if (region == Region::channel && j_B < 1)
        throw std::invalid_argument(
            "closed_form_amplitude: channel labels start at j_B = 1");
    auto check_eps = [](double e, const char* name) {
        if (!(e > 0.0) || !(e <= to_double(dd_half_pi)))
            throw std::invalid_argument(std::string("closed_form_amplitude: ") +
                                        name + " must lie in (0, pi/2]");
    };
    check_eps(eps_A, "eps_A");
    check_eps(eps_B, "eps_B");

    const bool limit = form == Form::limit;
    if (logic == 0) {
        switch (region) {
            case Region::alice:
                return {std::cos(j_A * eps_A), 0.0};
            case Region::between: {
                double s = std::sin(j_A * eps_A);
                if (limit) return {0.0, s};
                return {0.0, s * std::pow(std::cos(eps_B), j_B)};
            }
            case Region::channel: {
                double s = std::sin(j_A * eps_A);
                if (limit) return {-eps_B * s, 0.0};
                return {-s * std::pow(std::cos(eps_B), j_B - 1) *
                            std::sin(eps_B),
                        0.0};
            }
        }
    } else {
        switch (region) {
            case Region::alice:
                if (limit) return {1.0, 0.0};
                return {std::pow(std::cos(eps_A), j_A), 0.0};
            case Region::between: {
                double swing = std::cos(j_B * eps_B);
                if (limit) return {0.0, eps_A * swing};
                return {0.0, std::sin(eps_A) *
                                 std::pow(std::cos(eps_A), j_A - 1) * swing};
            }
            case Region::channel: {
                double swing = std::sin(j_B * eps_B);
                if (limit) return {-eps_A * swing, 0.0};
                return {-std::sin(eps_A) *
                            std::pow(std::cos(eps_A), j_A - 1) * swing,
                        0.0};
            }
        }
    }
    throw std::invalid_argument("closed_form_amplitude: unknown region");
}

ChannelProbability channel_probability(const SimTrace& trace) {
    if (trace.is_toy)
        throw std::invalid_argument(
            "channel_probability: defined for the two-barrier protocol only");
    const ProtocolConfig& cfg = trace.config;
    const int N = trace.cycle_count();
    if (N != cfg.n_A && N != 0)
        throw std::invalid_argument(
            "channel_probability: trace must cover the full n_A cycles");

    ChannelProbability out;
    out.measured = trace.ledger_norm;
    double pi = to_double(dd_pi);
    if (cfg.logic == 0)
        out.closed_form = (pi * pi / 8.0) *
                          (static_cast<double>(cfg.n_A) / cfg.n_B);
    else
        out.closed_form = (pi / 2.0) * cfg.eps_A();
    out.ratio = out.closed_form != 0.0 ? out.measured / out.closed_form : 0.0;
    return out;
}

int decode_bit(const SimTrace& trace, int detection_cycle) {
    if (detection_cycle < 0 || detection_cycle > trace.cycle_count())
        throw std::out_of_range("decode_bit: detection_cycle out of range");
    double p = std::norm(
        trace.boundaries[static_cast<std::size_t>(detection_cycle)].alice);
    return p > 0.5 ? 1 : 0;
}

}  // namespace cqc
