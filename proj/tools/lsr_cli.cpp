// Command-line front end: generate, lower, schedule, verify, stats, export.
#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsr/errors.hpp"
#include "lsr/frontend.hpp"
#include "lsr/generators.hpp"
#include "lsr/instruction.hpp"
#include "lsr/manybody.hpp"
#include "lsr/metrics.hpp"
#include "lsr/plane.hpp"
#include "lsr/schedule.hpp"
#include "lsr/schedulers.hpp"
#include "lsr/verify.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitFailure = 1;
constexpr int kExitRouting = 2;

void error_json(const std::string& kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << std::endl;
}

bool is_factory_symbol(const std::string& sym) {
    static const std::regex re("^f[0-9]+$");
    return std::regex_match(sym, re);
}

// Deterministic plane reconstruction shared by schedule/verify/stats: data
// symbols in first-appearance order, then factory symbols ("f<k>" when the
// header declares factories), row-major from the top left.
lsr::QubitPlane plane_for_program(const lsr::ProgramFile& prog, int plane_size_flag) {
    auto symbols = prog.instructions.symbols_in_order();
    std::vector<std::string> data, factories;
    const bool expect_factories = prog.header && prog.header->factories > 0;
    for (const auto& s : symbols) {
        if (expect_factories && is_factory_symbol(s))
            factories.push_back(s);
        else
            data.push_back(s);
    }
    int s = plane_size_flag;
    if (s <= 0 && prog.header) s = prog.header->plane_size;
    if (s <= 0) {
        size_t need = symbols.size();
        s = 1;
        while (size_t(s) * s < need) ++s;
    }
    lsr::QubitPlane plane = lsr::QubitPlane::build(s, 0);
    lsr::assign_symbols_row_major(plane, data, factories);
    return plane;
}

int cmd_gen(const std::string& kind, int m, int plane_size, uint64_t seed,
            const std::string& out_path) {
    lsr::ProgramFile prog;
    if (kind == "random") {
        if (plane_size < 2) throw lsr::DomainError("--plane-size must be >= 2 for random");
        prog.instructions = lsr::gen_random(m, plane_size, seed);
        prog.header = lsr::PlaneSpec{plane_size, 0};
    } else if (kind == "stair") {
        prog.instructions = lsr::gen_stair(m);
        prog.header = lsr::PlaneSpec{m + 1, 0};
    } else if (kind == "hub") {
        prog.instructions = lsr::gen_hub(m);
        prog.header = lsr::PlaneSpec{m + 1, 0};
    } else {
        throw lsr::DomainError("unknown generator kind: " + kind);
    }
    lsr::write_instructions_file(prog, out_path);
    return 0;
}

int cmd_lower(const std::string& in_path, const std::string& out_path, const std::string& mode,
              int factories) {
    auto circuit = lsr::parse_circuit_file(in_path);
    lsr::LowerMode m =
        mode == "cnot" ? lsr::LowerMode::Cnot : lsr::LowerMode::Measurements;
    lsr::LoweredProgram lowered = lsr::lower(circuit, m, factories);
    lsr::ProgramFile prog;
    prog.header = lsr::PlaneSpec{lowered.plane_size_needed(), int(lowered.factory_symbols.size())};
    prog.instructions = lowered.instructions;
    lsr::write_instructions_file(prog, out_path);
    if (!lowered.dropped.empty())
        std::cerr << "dropped " << lowered.dropped.size()
                  << " zero-time gates (H/S/Pauli) from the scheduled stream\n";
    return 0;
}

int cmd_schedule(const std::string& algo_s, const std::string& kink_s, const std::string& in_path,
                 int plane_size, const std::string& out_path) {
    lsr::Algorithm algo = lsr::algorithm_from_string(algo_s);
    bool kink = kink_s != "off";
    lsr::ProgramFile prog = lsr::read_instructions_file(in_path);
    lsr::QubitPlane plane = plane_for_program(prog, plane_size);

    auto t0 = std::chrono::steady_clock::now();
    lsr::Schedule sched = lsr::run_scheduler(algo, prog.instructions, plane, kink);
    auto t1 = std::chrono::steady_clock::now();
    lsr::write_schedule_file(sched, out_path);
    std::cerr << "scheduled " << prog.instructions.size() << " instructions in "
              << std::chrono::duration<double>(t1 - t0).count() << " s, total beats "
              << sched.total_beats << "\n";
    return 0;
}

int cmd_verify(const std::string& in_path, const std::string& sched_path, bool oracle, int seeds) {
    lsr::ProgramFile prog = lsr::read_instructions_file(in_path);
    lsr::Schedule sched = lsr::read_schedule_file(sched_path);
    lsr::QubitPlane plane = plane_for_program(prog, sched.plane_size);

    lsr::ValidateOptions opts;
    opts.check_kinks = sched.kink_condition;
    auto report = lsr::validate_schedule(prog.instructions, plane, sched, opts);

    nlohmann::ordered_json j;
    j["structural"] = report.ok ? "pass" : "fail";
    if (!report.ok) j["violation"] = report.first_violation;
    bool all_ok = report.ok;

    if (oracle && report.ok) {
        int pass = 0, fail = 0;
        nlohmann::ordered_json failures = nlohmann::ordered_json::array();
        for (const auto& r : sched.routed) {
            const lsr::Instruction& in = prog.instructions[r.instr_index];
            bool ok;
            if (r.tree || in.many_body()) {
                lsr::RoutingTree tree;
                tree.voxels = r.path.voxels;
                for (const auto& q : in.qubits) tree.targets.push_back(plane.cell_of(q));
                ok = lsr::verify_tree_action(tree, plane,
                                             in.basis == lsr::Basis::XX ? 'X' : 'Z', seeds);
            } else {
                lsr::LogicalOp expected{};
                switch (in.basis) {
                    case lsr::Basis::XX: expected = {lsr::LogicalOp::MXX, 0}; break;
                    case lsr::Basis::ZZ: expected = {lsr::LogicalOp::MZZ, 0}; break;
                    case lsr::Basis::CNOT: expected = {lsr::LogicalOp::CNOT, 0}; break;
                }
                try {
                    ok = lsr::verify_path_action(r.path, plane, expected, seeds);
                } catch (const lsr::SemanticError&) {
                    ok = false;
                }
            }
            if (ok)
                ++pass;
            else {
                ++fail;
                failures.push_back(r.instr_index);
            }
        }
        j["oracle"] = {{"pass", pass}, {"fail", fail}};
        if (fail > 0) j["oracle_failures"] = failures;
        all_ok = all_ok && fail == 0;
    }
    std::cout << j.dump() << std::endl;
    return all_ok ? 0 : kExitFailure;
}

int cmd_stats(const std::string& sched_path, int distance, double perr) {
    lsr::Schedule sched = lsr::read_schedule_file(sched_path);
    lsr::QubitPlane plane = lsr::QubitPlane::build(sched.plane_size, sched.factories);
    lsr::Metrics m = lsr::compute_metrics(sched, plane);
    if (distance > 0) {
        auto re = lsr::resource_estimate(m.active_volume, uint64_t(plane.n_cells()), distance, perr);
        std::cout << lsr::metrics_to_json(m, &re) << std::endl;
    } else {
        std::cout << lsr::metrics_to_json(m, nullptr) << std::endl;
    }
    return 0;
}

int cmd_export(const std::string& sched_path, const std::string& out_path) {
    lsr::Schedule sched = lsr::read_schedule_file(sched_path);
    std::ofstream out(out_path);
    if (!out) throw lsr::Error("cannot open " + out_path);
    for (const auto& r : sched.routed)
        for (const auto& v : r.path.voxels)
            out << v.cell.x << ' ' << v.cell.y << ' ' << v.t << ' ' << r.instr_index << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice-surgery instruction scheduler"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate an instruction file");
    std::string gen_kind = "random", gen_out;
    int gen_m = 0, gen_plane = 0;
    uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "random|stair|hub")->required();
    gen->add_option("--m", gen_m, "number of instructions")->required();
    gen->add_option("--plane-size", gen_plane, "qubit plane size (random)");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("-o,--out", gen_out, "output file")->required();

    auto* low = app.add_subcommand("lower", "lower a Clifford+T circuit");
    std::string low_in, low_out, low_mode = "measurements";
    int low_factories = 0;
    low->add_option("-i,--in", low_in, "circuit JSON-lines")->required();
    low->add_option("-o,--out", low_out, "output instruction file")->required();
    low->add_option("--mode", low_mode, "measurements|cnot");
    low->add_option("--factories", low_factories, "magic state factories");

    auto* sch = app.add_subcommand("schedule", "schedule an instruction file");
    std::string sch_algo, sch_kink = "on", sch_in, sch_out;
    int sch_plane = 0;
    sch->add_option("--algo", sch_algo, "bfs|la-bfs|bfs3d|dijkstra3d|proj|la-proj")->required();
    sch->add_option("--kink", sch_kink, "on|off (projection only)");
    sch->add_option("-i,--in", sch_in, "instruction file")->required();
    sch->add_option("--plane-size", sch_plane, "override plane size");
    sch->add_option("-o,--out", sch_out, "schedule JSON output")->required();

    auto* ver = app.add_subcommand("verify", "validate a schedule");
    std::string ver_in, ver_sched;
    bool ver_oracle = false;
    int ver_seeds = 8;
    ver->add_option("-i,--in", ver_in, "instruction file")->required();
    ver->add_option("-s,--schedule", ver_sched, "schedule JSON")->required();
    ver->add_flag("--oracle", ver_oracle, "run the stabilizer oracle per instruction");
    ver->add_option("--seeds", ver_seeds, "outcome seeds per instruction");

    auto* sta = app.add_subcommand("stats", "metrics and resource estimate");
    std::string sta_sched;
    int sta_distance = 0;
    double sta_perr = 1e-3;
    sta->add_option("-s,--schedule", sta_sched, "schedule JSON")->required();
    sta->add_option("--distance", sta_distance, "code distance (enables resource estimate)");
    sta->add_option("--perr", sta_perr, "physical error rate");

    auto* exp = app.add_subcommand("export", "dump voxels for visualization");
    std::string exp_sched, exp_out;
    exp->add_option("-s,--schedule", exp_sched, "schedule JSON")->required();
    exp->add_option("--voxels", exp_out, "output voxel list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_json("usage", e.what());
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_kind, gen_m, gen_plane, gen_seed, gen_out);
        if (low->parsed()) return cmd_lower(low_in, low_out, low_mode, low_factories);
        if (sch->parsed()) return cmd_schedule(sch_algo, sch_kink, sch_in, sch_plane, sch_out);
        if (ver->parsed()) return cmd_verify(ver_in, ver_sched, ver_oracle, ver_seeds);
        if (sta->parsed()) return cmd_stats(sta_sched, sta_distance, sta_perr);
        if (exp->parsed()) return cmd_export(exp_sched, exp_out);
    } catch (const lsr::RoutingError& e) {
        error_json("routing", e.what());
        return kExitRouting;
    } catch (const lsr::ParseError& e) {
        error_json("parse", e.what());
        return kExitFailure;
    } catch (const lsr::UnsupportedGateError& e) {
        error_json("unsupported-gate", e.what());
        return kExitFailure;
    } catch (const lsr::DomainError& e) {
        error_json("usage", e.what());
        return kExitUsage;
    } catch (const lsr::Error& e) {
        error_json("error", e.what());
        return kExitFailure;
    }
    return 0;
}
