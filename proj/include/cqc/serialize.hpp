#pragma once

// JSON (nlohmann) and CSV surfaces for every reportable type. JSON output
// round-trips: parsing the emitted document reproduces the source value
// bit-for-bit, including every double. CSV uses 17-significant-digit fields
// for the same reason.

#include <string>

#include <json.hpp>

#include "cqc/observables.hpp"
#include "cqc/protocol.hpp"
#include "cqc/sweep.hpp"

namespace cqc {

std::string format_machine(double x);  // 17 significant digits
std::string format_text(double x);     // 6 significant digits

void to_json(nlohmann::json& j, const ProtocolConfig& v);
void from_json(const nlohmann::json& j, ProtocolConfig& v);
void to_json(nlohmann::json& j, const PacketRecord& v);
void from_json(const nlohmann::json& j, PacketRecord& v);
void to_json(nlohmann::json& j, const CycleState& v);
void from_json(const nlohmann::json& j, CycleState& v);
void to_json(nlohmann::json& j, const SimTrace& v);
void from_json(const nlohmann::json& j, SimTrace& v);
void to_json(nlohmann::json& j, const ChannelProbability& v);
void from_json(const nlohmann::json& j, ChannelProbability& v);
void to_json(nlohmann::json& j, const OverlapDecomposition& v);
void from_json(const nlohmann::json& j, OverlapDecomposition& v);
void to_json(nlohmann::json& j, const FluxPoint& v);
void from_json(const nlohmann::json& j, FluxPoint& v);
void to_json(nlohmann::json& j, const FluxSeries& v);
void from_json(const nlohmann::json& j, FluxSeries& v);
void to_json(nlohmann::json& j, const MirrorResult& v);
void from_json(const nlohmann::json& j, MirrorResult& v);
void to_json(nlohmann::json& j, const SweepRow& v);
void from_json(const nlohmann::json& j, SweepRow& v);
void to_json(nlohmann::json& j, const SweepTable& v);
void from_json(const nlohmann::json& j, SweepTable& v);
void to_json(nlohmann::json& j, const FitResult& v);
void from_json(const nlohmann::json& j, FitResult& v);

// Fixed header: n_A,n_B,ratio,measured,reference,deviation
std::string to_csv(const SweepTable& table);
// Fixed header: j_A,cumulative_channel,alice_term,running_total
std::string to_csv(const FluxSeries& series);
// Per-cycle boundary states: cycle,alice_re,alice_im,inner_re,inner_im
std::string boundaries_csv(const SimTrace& trace);
// cycle,exchange_expectation
std::string mirror_csv(const MirrorResult& result);
// Single row under header n,value,deviation
std::string riemann_csv(int n, double value);

}  // namespace cqc
