#include "cqc/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cqc/dd.hpp"
#include "cqc/serialize.hpp"

namespace cqc {

namespace {

struct Invocation {
    int n_A = 100;
    int n_B = 10000;
    int cycles = -1;  // defaults to n_A
    int logic = 0;
    int n = 1000;      // riemann sample count
    int ladder = 3;    // sweep ladder depth k_max
    std::string target = "exchange_total";
    std::string format = "text";
    std::string out_path;
};

int resolved_cycles(const Invocation& inv) {
    return inv.cycles < 0 ? inv.n_A : inv.cycles;
}

std::pair<SimTrace, SimTrace> run_pair(const Invocation& inv) {
    ProtocolConfig cfg;
    cfg.n_A = inv.n_A;
    cfg.n_B = inv.n_B;
    cfg.cycles = resolved_cycles(inv);
    cfg.logic = 0;
    SimTrace up = run_protocol(cfg, TraceDetail::boundary);
    cfg.logic = 1;
    SimTrace dn = run_protocol(cfg, TraceDetail::boundary);
    return {std::move(up), std::move(dn)};
}

std::string trace_text(const SimTrace& t, const char* title) {
    std::ostringstream os;
    const CycleState& end = t.boundaries.back();
    os << title << "\n";
    if (t.is_toy)
        os << "  epsilon = " << format_text(t.toy_epsilon) << ", laps = "
           << t.cycle_count() << ", bob mirror = " << t.config.logic << "\n";
    else
        os << "  n_A = " << t.config.n_A << ", n_B = " << t.config.n_B
           << ", cycles = " << t.cycle_count() << ", logic = "
           << t.config.logic << "\n";
    os << "  alice amplitude: " << format_text(end.alice.real()) << " + "
       << format_text(end.alice.imag()) << " i  (probability "
       << format_text(std::norm(end.alice)) << ")\n";
    os << "  inner amplitude: " << format_text(end.inner.real()) << " + "
       << format_text(end.inner.imag()) << " i\n";
    os << "  escaped probability: " << format_text(t.ledger_norm) << "\n";
    os << "  decoded bit at final cycle: " << decode_bit(t, t.cycle_count())
       << "\n";
    os << "  max conservation error: " << format_text(t.max_conservation_error)
       << "\n";
    return os.str();
}

std::string run_toy_cmd(const Invocation& inv) {
    double eps = to_double(dd_pi / dd(2.0 * inv.n_A));
    SimTrace t = run_toy(eps, resolved_cycles(inv), inv.logic);
    if (inv.format == "json") return nlohmann::json(t).dump(2) + "\n";
    if (inv.format == "csv") return boundaries_csv(t);
    return trace_text(t, "single-barrier toy run");
}

std::string run_protocol_cmd(const Invocation& inv) {
    ProtocolConfig cfg;
    cfg.n_A = inv.n_A;
    cfg.n_B = inv.n_B;
    cfg.cycles = resolved_cycles(inv);
    cfg.logic = inv.logic;
    SimTrace t = run_protocol(cfg, TraceDetail::boundary);
    if (inv.format == "json") return nlohmann::json(t).dump(2) + "\n";
    if (inv.format == "csv") return boundaries_csv(t);
    return trace_text(t, "two-barrier protocol run");
}

std::string run_expectation_cmd(const Invocation& inv) {
    auto [up, dn] = run_pair(inv);
    OverlapDecomposition d = exchange_expectation(up, dn);
    const int N = up.cycle_count();
    double eps_A = up.config.eps_A();
    double alice_ref = std::cos(N * eps_A);
    double channel_ref = 1.0 - alice_ref;
    if (inv.format == "json") {
        nlohmann::json j{{"config", up.config},
                         {"cycles", N},
                         {"decomposition", d},
                         {"references",
                          {{"alice_contrib", alice_ref},
                           {"between_contrib", 0.0},
                           {"channel_contrib", channel_ref},
                           {"total", 1.0}}}};
        return j.dump(2) + "\n";
    }
    if (inv.format == "csv") {
        std::string out = "contribution,value,reference\n";
        out += "alice," + format_machine(d.alice_contrib) + ',' +
               format_machine(alice_ref) + '\n';
        out += "between," + format_machine(d.between_contrib) + ",0\n";
        out += "channel," + format_machine(d.channel_contrib) + ',' +
               format_machine(channel_ref) + '\n';
        out += "total," + format_machine(d.total) + ",1\n";
        return out;
    }
    std::ostringstream os;
    os << "exchange expectation at n_A = " << up.config.n_A << ", n_B = "
       << up.config.n_B << ", N = " << N << " cycles\n";
    os << "  region    value          reference\n";
    auto line = [&](const char* name, double v, double r) {
        os << "  " << name << std::string(10 - std::string(name).size(), ' ')
           << format_text(v) << std::string(15 - format_text(v).size(), ' ')
           << format_text(r) << "\n";
    };
    line("alice", d.alice_contrib, alice_ref);
    line("between", d.between_contrib, 0.0);
    line("channel", d.channel_contrib, channel_ref);
    line("total", d.total, 1.0);
    return os.str();
}

std::string run_flux_cmd(const Invocation& inv) {
    auto [up, dn] = run_pair(inv);
    FluxSeries f = flux_series(up, dn);
    if (inv.format == "json") {
        nlohmann::json j{{"config", up.config}, {"series", f}};
        return j.dump(2) + "\n";
    }
    if (inv.format == "csv") return to_csv(f);
    std::ostringstream os;
    os << "channel flux at n_A = " << up.config.n_A << ", n_B = "
       << up.config.n_B << " over " << f.points.size() << " cycles\n";
    if (!f.points.empty()) {
        const FluxPoint& last = f.points.back();
        double ref = 1.0 - std::cos(last.j_A * up.config.eps_A());
        os << "  final cumulative channel: " << format_text(last.cumulative_channel)
           << "  (reference 1 - cos(N eps_A) = " << format_text(ref) << ")\n";
        os << "  final running total: " << format_text(last.running_total)
           << "\n";
    }
    return os.str();
}

std::string run_mirror_cmd(const Invocation& inv) {
    ProtocolConfig base;
    base.n_A = inv.n_A;
    base.n_B = inv.n_B;
    MirrorResult m = mirror_superposition_run(base, resolved_cycles(inv));
    if (inv.format == "json") {
        nlohmann::json j{{"config", base},
                         {"total_cycles", resolved_cycles(inv)},
                         {"result", m}};
        return j.dump(2) + "\n";
    }
    if (inv.format == "csv") return mirror_csv(m);
    std::ostringstream os;
    const OverlapDecomposition& d = m.decomposition_at_end;
    os << "mirror-branch exchange expectation at n_A = " << inv.n_A
       << ", n_B = " << inv.n_B << ", total cycles = " << resolved_cycles(inv)
       << "\n";
    os << "  alice-region overlap: " << format_text(m.alice_region_overlap_at_end)
       << "\n";
    os << "  channel contribution: " << format_text(d.channel_contrib) << "\n";
    os << "  full total: " << format_text(d.total) << "\n";
    return os.str();
}

std::string run_riemann_cmd(const Invocation& inv) {
    double value = riemann_transfer_sum(inv.n);
    if (inv.format == "json") {
        nlohmann::json j{{"n", inv.n},
                         {"value", value},
                         {"deviation", value - 1.0}};
        return j.dump(2) + "\n";
    }
    if (inv.format == "csv") return riemann_csv(inv.n, value);
    std::ostringstream os;
    os << "transfer-integral riemann sum: n = " << inv.n << ", value = "
       << format_text(value) << ", deviation = " << format_text(value - 1.0)
       << "\n";
    return os.str();
}

std::string run_sweep_cmd(const Invocation& inv) {
    SweepSpec spec;
    spec.pairs = default_ladder(inv.ladder);
    spec.target = sweep_target_from_string(inv.target);
    SweepTable table = run_sweep(spec);
    if (inv.format == "json") return nlohmann::json(table).dump(2) + "\n";
    if (inv.format == "csv") return to_csv(table);
    std::ostringstream os;
    os << "sweep of " << to_string(table.target)
       << " along the double-limit ladder\n";
    os << "  n_A     n_B       measured       reference      deviation\n";
    for (const SweepRow& r : table.rows) {
        auto col = [](const std::string& s, std::size_t w) {
            return s + std::string(s.size() < w ? w - s.size() : 1, ' ');
        };
        os << "  " << col(std::to_string(r.n_A), 8)
           << col(std::to_string(r.n_B), 10) << col(format_text(r.measured), 15)
           << col(format_text(r.reference), 15) << format_text(r.deviation)
           << "\n";
    }
    return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    Invocation inv;
    CLI::App app{"counterfactual-cavity simulator and verification tool"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_nb, bool with_logic) {
        sub->add_option("--n-a", inv.n_A, "barrier-A step count (eps_A = pi/(2 n_A))");
        if (with_nb)
            sub->add_option("--n-b", inv.n_B, "barrier-B step count (eps_B = pi/(2 n_B))");
        sub->add_option("--cycles", inv.cycles, "outer cycles (default n_A)");
        if (with_logic)
            sub->add_option("--logic", inv.logic, "Bob's bit: 0 open, 1 mirrored");
        sub->add_option("--format", inv.format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--out", inv.out_path, "write output to this path");
    };

    CLI::App* toy = app.add_subcommand("toy", "single-barrier protocol");
    add_common(toy, false, true);
    CLI::App* protocol = app.add_subcommand("protocol", "two-barrier protocol");
    add_common(protocol, true, true);
    CLI::App* expectation =
        app.add_subcommand("expectation", "region-resolved exchange expectation");
    add_common(expectation, true, false);
    CLI::App* flux = app.add_subcommand("flux", "per-cycle channel flux");
    add_common(flux, true, false);
    CLI::App* mirror =
        app.add_subcommand("mirror", "two mirror branches of one cavity");
    add_common(mirror, true, false);
    CLI::App* riemann =
        app.add_subcommand("riemann", "transfer-integral riemann sum");
    riemann->add_option("--n", inv.n, "number of sample points");
    riemann->add_option("--format", inv.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    riemann->add_option("--out", inv.out_path, "write output to this path");
    CLI::App* sweep =
        app.add_subcommand("sweep", "double-limit deviation table");
    sweep->add_option("--ladder", inv.ladder, "ladder depth k_max (0..3)");
    sweep->add_option("--target", inv.target, "swept quantity");
    sweep->add_option("--format", inv.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sweep->add_option("--out", inv.out_path, "write output to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    std::string payload;
    try {
        if (toy->parsed()) payload = run_toy_cmd(inv);
        else if (protocol->parsed()) payload = run_protocol_cmd(inv);
        else if (expectation->parsed()) payload = run_expectation_cmd(inv);
        else if (flux->parsed()) payload = run_flux_cmd(inv);
        else if (mirror->parsed()) payload = run_mirror_cmd(inv);
        else if (riemann->parsed()) payload = run_riemann_cmd(inv);
        else payload = run_sweep_cmd(inv);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (!inv.out_path.empty()) {
        std::ofstream file(inv.out_path);
        if (!file) {
            err << "cannot open output path: " << inv.out_path << "\n";
            return 3;
        }
        file << payload;
        file.flush();
        if (!file) {
            err << "failed writing output path: " << inv.out_path << "\n";
            return 3;
        }
        return 0;
    }
    out << payload;
    out.flush();
    if (!out) {
        err << "failed writing output stream\n";
        return 3;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("cqc");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cqc
