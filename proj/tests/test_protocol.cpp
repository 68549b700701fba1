#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cqc/protocol.hpp"

// Frozen scalars in this file were generated with an independent 60-digit
// recurrence evaluation of the same dynamics and rounded to 17 digits.

namespace {

using namespace cqc;

ProtocolConfig make_config(int n_A, int n_B, int cycles, int logic) {
    ProtocolConfig cfg;
    cfg.n_A = n_A;
    cfg.n_B = n_B;
    cfg.cycles = cycles;
    cfg.logic = logic;
    return cfg;
}

double toy_epsilon_for(long n) { return Barrier::quarter_fraction(n).epsilon(); }

}  // namespace

TEST_CASE("toy blocked run matches the per-lap escape closed form") {
    double eps = toy_epsilon_for(100);
    SimTrace t = run_toy(eps, 100, 0);
    REQUIRE(t.is_toy);
    REQUIRE(t.cycle_count() == 100);
    const ComplexAmp alice = t.boundaries.back().alice;
    CHECK(std::fabs(alice.real() - 0.98773828221037392) <= 1e-14);
    CHECK(alice.imag() == 0.0);
    CHECK(std::fabs(std::norm(alice) - 0.97562691414390028) <= 1e-14);
    CHECK(std::fabs(t.ledger_norm - 0.024373085856099719) <= 1e-14);
    CHECK(t.max_conservation_error <= 1e-12);

    REQUIRE(t.ledger.size() == 100);
    double c = std::cos(eps), s = std::sin(eps);
    for (int j = 1; j <= 100; j += 9) {
        ComplexAmp want{0.0, s * std::pow(c, j - 1)};
        CAPTURE(j);
        CHECK(std::abs(t.ledger[j - 1].amplitude - want) <= 1e-14);
        CHECK(t.ledger[j - 1].j_A == j);
        CHECK_FALSE(t.ledger[j - 1].j_B.has_value());
        CHECK(t.ledger[j - 1].status == PacketStatus::escaped);
    }
}

TEST_CASE("toy mirrored run is a coherent rotation") {
    double eps = toy_epsilon_for(100);
    SimTrace t = run_toy(eps, 100, 1);
    CHECK(std::abs(t.boundaries.back().alice) <= 1e-15);
    CHECK(std::abs(t.boundaries.back().inner - ComplexAmp{0.0, 1.0}) <= 1e-13);
    CHECK(t.ledger.empty());
    CHECK(t.ledger_norm == 0.0);

    Barrier b{eps};
    for (int j : {1, 7, 50, 100}) {
        AmpPair ref = barrier_power(b, j, {{1.0, 0.0}, {0.0, 0.0}});
        CAPTURE(j);
        CHECK(std::abs(t.boundaries[j].alice - ref.first) <= 1e-13);
        CHECK(std::abs(t.boundaries[j].inner - ref.second) <= 1e-13);
    }
}

TEST_CASE("toy input validation") {
    CHECK_THROWS_AS(run_toy(0.0, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_toy(-0.1, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_toy(1.5708, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_toy(0.1, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_toy(0.1, 5, 2), std::invalid_argument);
    CHECK_NOTHROW(run_toy(1.5707963267948966, 1, 1));
}

TEST_CASE("mirrored-protocol trace matches its product closed forms") {
    ProtocolConfig cfg = make_config(100, 100, 100, 1);
    SimTrace t = run_protocol(cfg, TraceDetail::full);
    double eA = cfg.eps_A(), eB = cfg.eps_B();

    for (int j = 1; j <= 100; j += 7) {
        ComplexAmp want =
            closed_form_amplitude(Region::alice, 1, j, 0, eA, eB, Form::exact);
        CAPTURE(j);
        CHECK(std::abs(t.boundaries[j].alice - want) <= 1e-12);
    }

    for (int j_A : {1, 13, 60, 100}) {
        for (int j_B : {1, 25, 50, 99, 100}) {
            std::size_t idx =
                static_cast<std::size_t>(j_A - 1) * 101 + j_B;
            const Snapshot& snap = t.snapshots[idx];
            REQUIRE(snap.j_A == j_A);
            REQUIRE(snap.j_B == j_B);
            ComplexAmp between = closed_form_amplitude(Region::between, 1, j_A,
                                                       j_B, eA, eB, Form::exact);
            ComplexAmp channel = closed_form_amplitude(Region::channel, 1, j_A,
                                                       j_B, eA, eB, Form::exact);
            CAPTURE(j_A);
            CAPTURE(j_B);
            CHECK(std::abs(snap.inner - between) <= 1e-12);
            CHECK(std::abs(snap.channel_local - channel) <= 1e-12);
            CHECK(std::abs(t.channel_amp(j_A, j_B) - channel) <= 1e-12);
        }
    }

    REQUIRE(t.ledger.size() == 100);
    for (int j = 1; j <= 100; j += 11) {
        ComplexAmp removed = closed_form_amplitude(Region::channel, 1, j, 100,
                                                   eA, eB, Form::exact);
        CAPTURE(j);
        CHECK(std::abs(t.ledger[j - 1].amplitude - removed) <= 1e-12);
        CHECK_FALSE(t.ledger[j - 1].j_B.has_value());
    }
    CHECK(t.max_conservation_error <= 1e-12);
}

TEST_CASE("open-protocol alice amplitude obeys the leakage bound") {
    auto max_cos_deviation = [](int n_A, int n_B) {
        ProtocolConfig cfg = make_config(n_A, n_B, n_A, 0);
        SimTrace t = run_protocol(cfg, TraceDetail::boundary);
        double eA = cfg.eps_A(), eB = cfg.eps_B();
        double worst = 0.0;
        for (int j = 1; j <= n_A; ++j) {
            CHECK(t.boundaries[j].alice.imag() == 0.0);
            double dev = std::fabs(t.boundaries[j].alice.real() -
                                   std::cos(j * eA));
            CHECK(dev <= 2.0 * j * n_B * eB * eB);
            worst = std::max(worst, dev);
        }
        return worst;
    };

    double dev_coarse = max_cos_deviation(50, 5000);
    double dev_fine = max_cos_deviation(50, 25000);
    CHECK(std::fabs(dev_coarse - 0.0039136212225760355) <= 1e-13);
    CHECK(std::fabs(dev_fine - 0.00078465568957042109) <= 1e-13);
    CHECK(dev_fine < dev_coarse);
}

TEST_CASE("channel probability against frozen references") {
    SUBCASE("open end, eps ratio 1:100") {
        SimTrace t =
            run_protocol(make_config(50, 5000, -1, 0), TraceDetail::boundary);
        ChannelProbability p = channel_probability(t);
        CHECK(std::fabs(p.measured - 0.012474366636125785) <= 1e-13);
        CHECK(std::fabs(p.closed_form - 0.012337005501361698) <= 1e-15);
        CHECK(std::fabs(p.ratio - 1.0111340742086016) <= 1e-10);
    }
    SUBCASE("open end, larger steps") {
        SimTrace t =
            run_protocol(make_config(100, 10000, -1, 0), TraceDetail::boundary);
        ChannelProbability p = channel_probability(t);
        CHECK(std::fabs(p.measured - 0.012352514688097534) <= 1e-13);
        CHECK(std::fabs(p.ratio - 1.0012571273259239) <= 1e-10);
    }
    SUBCASE("mirrored end stays under its bound") {
        SimTrace t =
            run_protocol(make_config(50, 5000, -1, 1), TraceDetail::boundary);
        ChannelProbability p = channel_probability(t);
        CHECK(std::fabs(p.measured - 0.048157921202222446) <= 1e-13);
        CHECK(std::fabs(p.closed_form - 0.049348022005446793) <= 1e-15);
        CHECK(p.measured <= p.closed_form);
    }
    SUBCASE("degenerate zero-cycle trace") {
        SimTrace t =
            run_protocol(make_config(50, 5000, 0, 0), TraceDetail::boundary);
        ChannelProbability p = channel_probability(t);
        CHECK(p.measured == 0.0);
        CHECK(p.ratio == 0.0);
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(channel_probability(run_toy(0.1, 3, 0)),
                        std::invalid_argument);
        SimTrace partial =
            run_protocol(make_config(50, 5000, 10, 0), TraceDetail::boundary);
        CHECK_THROWS_AS(channel_probability(partial), std::invalid_argument);
    }
}

TEST_CASE("decode recovers the mirror bit at full length") {
    struct Case {
        int n_A, n_B;
        double p0, p1;
    };
    const Case cases[] = {
        {20, 2000, 1.5263527895663939e-5, 0.88382420539658468},
        {50, 5000, 1.5316431073797543e-5, 0.95184207879777755},
    };
    for (const Case& c : cases) {
        CAPTURE(c.n_A);
        SimTrace open =
            run_protocol(make_config(c.n_A, c.n_B, -1, 0), TraceDetail::boundary);
        SimTrace mirrored =
            run_protocol(make_config(c.n_A, c.n_B, -1, 1), TraceDetail::boundary);
        CHECK(decode_bit(open, c.n_A) == 0);
        CHECK(decode_bit(mirrored, c.n_A) == 1);
        CHECK(std::fabs(std::norm(open.boundaries.back().alice) - c.p0) <=
              1e-13);
        CHECK(std::fabs(std::norm(mirrored.boundaries.back().alice) - c.p1) <=
              1e-13);
        CHECK(decode_bit(open, 0) == 1);
    }

    SimTrace t = run_protocol(make_config(20, 2000, -1, 0));
    CHECK_THROWS_AS(decode_bit(t, 21), std::out_of_range);
    CHECK_THROWS_AS(decode_bit(t, -1), std::out_of_range);
    SimTrace empty = run_protocol(make_config(20, 2000, 0, 0));
    CHECK(decode_bit(empty, 0) == 1);
    CHECK_THROWS_AS(decode_bit(empty, 20), std::out_of_range);
}

TEST_CASE("trace shapes per detail level") {
    ProtocolConfig cfg = make_config(10, 40, 7, 0);
    SimTrace full = run_protocol(cfg, TraceDetail::full);
    CHECK(full.snapshots.size() == 7u * 41u);
    CHECK(full.boundaries.size() == 8u);
    CHECK(full.ledger.size() == 7u * 40u);
    CHECK(full.occupancy.empty());
    for (std::size_t i = 0; i < full.ledger.size(); ++i) {
        const PacketRecord& r = full.ledger[i];
        REQUIRE(r.j_B.has_value());
        CHECK(r.j_A == static_cast<int>(i / 40) + 1);
        CHECK(*r.j_B == static_cast<int>(i % 40) + 1);
        CHECK(r.status == PacketStatus::escaped);
    }

    SimTrace bound = run_protocol(cfg, TraceDetail::boundary);
    CHECK(bound.snapshots.empty());
    REQUIRE(bound.boundaries.size() == full.boundaries.size());
    for (std::size_t i = 0; i < bound.boundaries.size(); ++i) {
        CHECK(bound.boundaries[i].alice == full.boundaries[i].alice);
        CHECK(bound.boundaries[i].inner == full.boundaries[i].inner);
    }
    CHECK(bound.ledger_norm == full.ledger_norm);

    SimTrace mirrored = run_protocol(make_config(10, 40, 7, 1));
    CHECK(mirrored.snapshots.size() == 7u * 41u);
    CHECK(mirrored.ledger.size() == 7u);
    CHECK(mirrored.occupancy.size() == 7u * 40u);
    for (const PacketRecord& r : mirrored.ledger)
        CHECK_FALSE(r.j_B.has_value());

    SimTrace none = run_protocol(make_config(10, 40, 0, 0));
    CHECK(none.cycle_count() == 0);
    CHECK(none.boundaries.size() == 1u);
    CHECK(none.snapshots.empty());
    CHECK(none.ledger.empty());
    CHECK(none.ledger_norm == 0.0);
    CHECK(none.boundaries[0].alice == ComplexAmp{1.0, 0.0});
}

TEST_CASE("protocol configuration validation") {
    CHECK_THROWS_AS(run_protocol(make_config(0, 100, 5, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_protocol(make_config(10, 0, 5, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_protocol(make_config(10, 100, 5, 2)),
                    std::invalid_argument);
    ProtocolConfig bad = make_config(10, 100, 5, 0);
    bad.length_scale = 0.0;
    CHECK_THROWS_AS(run_protocol(bad), std::invalid_argument);
    bad.length_scale = 1.0;
    bad.speed = -2.0;
    CHECK_THROWS_AS(run_protocol(bad), std::invalid_argument);

    SimTrace t = run_protocol(make_config(7, 11, -3, 0));
    CHECK(t.cycle_count() == 7);
    CHECK(t.config.cycles == 7);
}

TEST_CASE("single full inner swing reduces the protocol to the toy") {
    ProtocolConfig cfg = make_config(10, 1, 10, 1);
    SimTrace proto = run_protocol(cfg, TraceDetail::boundary);
    SimTrace toy = run_toy(cfg.eps_A(), 10, 0, TraceDetail::boundary);

    REQUIRE(proto.boundaries.size() == toy.boundaries.size());
    for (std::size_t j = 0; j < proto.boundaries.size(); ++j) {
        CHECK(std::abs(proto.boundaries[j].alice - toy.boundaries[j].alice) <=
              1e-15);
        CHECK(std::abs(proto.boundaries[j].inner) <= 1e-30);
    }
    REQUIRE(proto.ledger.size() == toy.ledger.size());
    for (std::size_t j = 0; j < proto.ledger.size(); ++j) {
        CHECK(std::fabs(std::norm(proto.ledger[j].amplitude) -
                        std::norm(toy.ledger[j].amplitude)) <= 1e-16);
    }
    CHECK(std::fabs(proto.ledger_norm - toy.ledger_norm) <= 1e-16);
}

TEST_CASE("channel amplitude label handling") {
    CHECK_THROWS_AS(run_toy(0.1, 3, 0).channel_amp(1, 1),
                    std::invalid_argument);

    SimTrace open = run_protocol(make_config(5, 8, 5, 0));
    CHECK(open.channel_amp(1, 1) == open.ledger[0].amplitude);
    CHECK(open.channel_amp(5, 8) == open.ledger[39].amplitude);
    CHECK_THROWS_AS(open.channel_amp(0, 1), std::out_of_range);
    CHECK_THROWS_AS(open.channel_amp(1, 0), std::out_of_range);
    CHECK_THROWS_AS(open.channel_amp(6, 1), std::out_of_range);
    CHECK_THROWS_AS(open.channel_amp(1, 9), std::out_of_range);

    SimTrace mirrored = run_protocol(make_config(5, 8, 5, 1));
    CHECK(mirrored.channel_amp(3, 4) == mirrored.occupancy[2 * 8 + 3]);
}

TEST_CASE("closed-form amplitude validation and limit forms") {
    double eA = 0.015707963267948967, eB = 0.00015707963267948965;
    CHECK_THROWS_AS(
        closed_form_amplitude(Region::alice, 2, 1, 0, eA, eB, Form::exact),
        std::invalid_argument);
    CHECK_THROWS_AS(
        closed_form_amplitude(Region::alice, 0, -1, 0, eA, eB, Form::exact),
        std::invalid_argument);
    CHECK_THROWS_AS(
        closed_form_amplitude(Region::channel, 0, 1, 0, eA, eB, Form::exact),
        std::invalid_argument);
    CHECK_THROWS_AS(
        closed_form_amplitude(Region::alice, 0, 1, 0, 0.0, eB, Form::exact),
        std::invalid_argument);
    CHECK_THROWS_AS(
        closed_form_amplitude(Region::alice, 0, 1, 0, eA, 1.6, Form::exact),
        std::invalid_argument);

    ComplexAmp limit0 =
        closed_form_amplitude(Region::channel, 0, 30, 5, eA, eB, Form::limit);
    CHECK(std::abs(limit0 - ComplexAmp{-eB * std::sin(30 * eA), 0.0}) <=
          1e-17);
    ComplexAmp limit1 =
        closed_form_amplitude(Region::alice, 1, 30, 0, eA, eB, Form::limit);
    CHECK(limit1 == ComplexAmp{1.0, 0.0});
}

TEST_CASE("probability conservation holds at rounding level everywhere") {
    for (int logic : {0, 1}) {
        CAPTURE(logic);
        CHECK(run_protocol(make_config(10, 40, 7, logic)).max_conservation_error <=
              1e-12);
        CHECK(run_protocol(make_config(50, 500, 50, logic))
                  .max_conservation_error <= 1e-12);
    }
    CHECK(run_toy(0.3, 1000, 0).max_conservation_error <= 1e-12);
    CHECK(run_toy(0.3, 1000, 1).max_conservation_error <= 1e-12);
}
