#include "cqc/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace cqc {

using nlohmann::json;

std::string format_machine(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

namespace {

json complex_json(ComplexAmp z) { return json{z.real(), z.imag()}; }

ComplexAmp complex_from(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

const char* status_name(PacketStatus s) {
    return s == PacketStatus::escaped ? "escaped" : "channel_occupancy";
}

PacketStatus status_from(const std::string& s) {
    if (s == "escaped") return PacketStatus::escaped;
    if (s == "channel_occupancy") return PacketStatus::channel_occupancy;
    throw std::invalid_argument("unknown packet status: " + s);
}

}  // namespace

void to_json(json& j, const ProtocolConfig& v) {
    j = json{{"n_A", v.n_A},
             {"n_B", v.n_B},
             {"cycles", v.cycles},
             {"logic", v.logic},
             {"length_scale", v.length_scale},
             {"speed", v.speed}};
}

void from_json(const json& j, ProtocolConfig& v) {
    j.at("n_A").get_to(v.n_A);
    j.at("n_B").get_to(v.n_B);
    j.at("cycles").get_to(v.cycles);
    j.at("logic").get_to(v.logic);
    j.at("length_scale").get_to(v.length_scale);
    j.at("speed").get_to(v.speed);
}

void to_json(json& j, const PacketRecord& v) {
    j = json{{"j_A", v.j_A},
             {"j_B", v.j_B ? json(*v.j_B) : json(nullptr)},
             {"re", v.amplitude.real()},
             {"im", v.amplitude.imag()},
             {"status", status_name(v.status)}};
}

void from_json(const json& j, PacketRecord& v) {
    j.at("j_A").get_to(v.j_A);
    const json& jb = j.at("j_B");
    v.j_B = jb.is_null() ? std::nullopt : std::optional<int>(jb.get<int>());
    v.amplitude = {j.at("re").get<double>(), j.at("im").get<double>()};
    v.status = status_from(j.at("status").get<std::string>());
}

void to_json(json& j, const CycleState& v) {
    j = json{{"alice", complex_json(v.alice)}, {"inner", complex_json(v.inner)}};
}

void from_json(const json& j, CycleState& v) {
    v.alice = complex_from(j.at("alice"));
    v.inner = complex_from(j.at("inner"));
}

void to_json(json& j, const SimTrace& v) {
    json snapshots = json::array();
    for (const Snapshot& s : v.snapshots) {
        const std::pair<const char*, ComplexAmp> regions[] = {
            {"alice", s.alice}, {"between", s.inner}, {"channel", s.channel_local}};
        for (auto& [name, amp] : regions)
            snapshots.push_back(json{{"j_A", s.j_A},
                                     {"j_B", s.j_B},
                                     {"region", name},
                                     {"re", amp.real()},
                                     {"im", amp.imag()}});
    }
    json occupancy = json::array();
    for (ComplexAmp z : v.occupancy) occupancy.push_back(complex_json(z));
    j = json{{"config", v.config},
             {"detail", v.detail == TraceDetail::full ? "full" : "boundary"},
             {"is_toy", v.is_toy},
             {"toy_epsilon", v.toy_epsilon},
             {"snapshots", snapshots},
             {"boundaries", v.boundaries},
             {"ledger", v.ledger},
             {"occupancy", occupancy},
             {"ledger_norm", v.ledger_norm},
             {"max_conservation_error", v.max_conservation_error}};
}

void from_json(const json& j, SimTrace& v) {
    j.at("config").get_to(v.config);
    std::string detail = j.at("detail").get<std::string>();
    if (detail == "full")
        v.detail = TraceDetail::full;
    else if (detail == "boundary")
        v.detail = TraceDetail::boundary;
    else
        throw std::invalid_argument("unknown trace detail: " + detail);
    j.at("is_toy").get_to(v.is_toy);
    j.at("toy_epsilon").get_to(v.toy_epsilon);

    const json& snaps = j.at("snapshots");
    if (snaps.size() % 3 != 0)
        throw std::invalid_argument(
            "snapshots array must hold three region entries per instant");
    v.snapshots.clear();
    v.snapshots.reserve(snaps.size() / 3);
    for (std::size_t i = 0; i < snaps.size(); i += 3) {
        Snapshot s;
        s.j_A = snaps[i].at("j_A").get<int>();
        s.j_B = snaps[i].at("j_B").get<int>();
        const char* expected[] = {"alice", "between", "channel"};
        ComplexAmp* slots[] = {&s.alice, &s.inner, &s.channel_local};
        for (int r = 0; r < 3; ++r) {
            const json& e = snaps[i + r];
            if (e.at("region").get<std::string>() != expected[r] ||
                e.at("j_A").get<int>() != s.j_A ||
                e.at("j_B").get<int>() != s.j_B)
                throw std::invalid_argument(
                    "snapshot entries out of region order");
            *slots[r] = {e.at("re").get<double>(), e.at("im").get<double>()};
        }
        v.snapshots.push_back(s);
    }
    j.at("boundaries").get_to(v.boundaries);
    j.at("ledger").get_to(v.ledger);
    const json& occ = j.at("occupancy");
    v.occupancy.clear();
    v.occupancy.reserve(occ.size());
    for (const json& e : occ) v.occupancy.push_back(complex_from(e));
    j.at("ledger_norm").get_to(v.ledger_norm);
    j.at("max_conservation_error").get_to(v.max_conservation_error);
}

void to_json(json& j, const ChannelProbability& v) {
    j = json{{"measured", v.measured},
             {"closed_form", v.closed_form},
             {"ratio", v.ratio}};
}

void from_json(const json& j, ChannelProbability& v) {
    j.at("measured").get_to(v.measured);
    j.at("closed_form").get_to(v.closed_form);
    j.at("ratio").get_to(v.ratio);
}

void to_json(json& j, const OverlapDecomposition& v) {
    j = json{{"alice_contrib", v.alice_contrib},
             {"between_contrib", v.between_contrib},
             {"channel_contrib", v.channel_contrib},
             {"total", v.total}};
}

void from_json(const json& j, OverlapDecomposition& v) {
    j.at("alice_contrib").get_to(v.alice_contrib);
    j.at("between_contrib").get_to(v.between_contrib);
    j.at("channel_contrib").get_to(v.channel_contrib);
    j.at("total").get_to(v.total);
}

void to_json(json& j, const FluxPoint& v) {
    j = json{{"j_A", v.j_A},
             {"cumulative_channel", v.cumulative_channel},
             {"alice_term", v.alice_term},
             {"running_total", v.running_total}};
}

void from_json(const json& j, FluxPoint& v) {
    j.at("j_A").get_to(v.j_A);
    j.at("cumulative_channel").get_to(v.cumulative_channel);
    j.at("alice_term").get_to(v.alice_term);
    j.at("running_total").get_to(v.running_total);
}

void to_json(json& j, const FluxSeries& v) { j = json{{"points", v.points}}; }

void from_json(const json& j, FluxSeries& v) {
    j.at("points").get_to(v.points);
}

void to_json(json& j, const MirrorResult& v) {
    j = json{{"exchange_series", v.exchange_series},
             {"decomposition_at_end", v.decomposition_at_end},
             {"alice_region_overlap_at_end", v.alice_region_overlap_at_end}};
}

void from_json(const json& j, MirrorResult& v) {
    j.at("exchange_series").get_to(v.exchange_series);
    j.at("decomposition_at_end").get_to(v.decomposition_at_end);
    j.at("alice_region_overlap_at_end").get_to(v.alice_region_overlap_at_end);
}

void to_json(json& j, const SweepRow& v) {
    j = json{{"n_A", v.n_A},         {"n_B", v.n_B},
             {"ratio", v.ratio},     {"measured", v.measured},
             {"reference", v.reference}, {"deviation", v.deviation}};
}

void from_json(const json& j, SweepRow& v) {
    j.at("n_A").get_to(v.n_A);
    j.at("n_B").get_to(v.n_B);
    j.at("ratio").get_to(v.ratio);
    j.at("measured").get_to(v.measured);
    j.at("reference").get_to(v.reference);
    j.at("deviation").get_to(v.deviation);
}

void to_json(json& j, const SweepTable& v) {
    j = json{{"target", to_string(v.target)}, {"rows", v.rows}};
}

void from_json(const json& j, SweepTable& v) {
    v.target = sweep_target_from_string(j.at("target").get<std::string>());
    j.at("rows").get_to(v.rows);
}

void to_json(json& j, const FitResult& v) {
    j = json{{"fittable", v.fittable},
             {"reason", v.reason},
             {"order", v.order},
             {"constant", v.constant},
             {"r_squared", v.r_squared}};
}

void from_json(const json& j, FitResult& v) {
    j.at("fittable").get_to(v.fittable);
    j.at("reason").get_to(v.reason);
    j.at("order").get_to(v.order);
    j.at("constant").get_to(v.constant);
    j.at("r_squared").get_to(v.r_squared);
}

std::string to_csv(const SweepTable& table) {
    std::string out = "n_A,n_B,ratio,measured,reference,deviation\n";
    for (const SweepRow& r : table.rows) {
        out += std::to_string(r.n_A) + ',' + std::to_string(r.n_B) + ',' +
               format_machine(r.ratio) + ',' + format_machine(r.measured) +
               ',' + format_machine(r.reference) + ',' +
               format_machine(r.deviation) + '\n';
    }
    return out;
}

std::string to_csv(const FluxSeries& series) {
    std::string out = "j_A,cumulative_channel,alice_term,running_total\n";
    for (const FluxPoint& p : series.points) {
        out += std::to_string(p.j_A) + ',' +
               format_machine(p.cumulative_channel) + ',' +
               format_machine(p.alice_term) + ',' +
               format_machine(p.running_total) + '\n';
    }
    return out;
}

std::string boundaries_csv(const SimTrace& trace) {
    std::string out = "cycle,alice_re,alice_im,inner_re,inner_im\n";
    for (std::size_t i = 0; i < trace.boundaries.size(); ++i) {
        const CycleState& b = trace.boundaries[i];
        out += std::to_string(i) + ',' + format_machine(b.alice.real()) + ',' +
               format_machine(b.alice.imag()) + ',' +
               format_machine(b.inner.real()) + ',' +
               format_machine(b.inner.imag()) + '\n';
    }
    return out;
}

std::string mirror_csv(const MirrorResult& result) {
    std::string out = "cycle,exchange_expectation\n";
    for (std::size_t i = 0; i < result.exchange_series.size(); ++i)
        out += std::to_string(i) + ',' +
               format_machine(result.exchange_series[i]) + '\n';
    return out;
}

std::string riemann_csv(int n, double value) {
    return "n,value,deviation\n" + std::to_string(n) + ',' +
           format_machine(value) + ',' + format_machine(value - 1.0) + '\n';
}

}  // namespace cqc
