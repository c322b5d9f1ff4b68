#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynmatch/runner.hpp"
#include "dynmatch/sequence_io.hpp"

using namespace dynmatch;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DYNMATCH_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

std::vector<int> parse_n_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw CLI::ValidationError("--n-list", "empty list");
    return out;
}

void emit_report(const RunReport& r, const std::string& json_out) {
    std::string json = report_to_json(r);
    if (json_out.empty()) {
        std::cout << json;
    } else {
        std::ofstream f(json_out, std::ios::binary);
        f << json;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic fully dynamic maximal matching"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an update-sequence file");
    std::string g_kind = "random", g_out;
    int g_n = 64;
    long long g_len = 0;
    double g_p = 0.5;
    std::uint64_t g_seed = default_seed();
    gen->add_option("--kind", g_kind, "random|decremental_complete|insert_then_delete|adaptive_matched_attack");
    gen->add_option("--n", g_n, "vertex count")->check(CLI::PositiveNumber);
    gen->add_option("--len", g_len, "event count (0 = natural length)");
    gen->add_option("--p-insert", g_p, "insertion bias for kind=random");
    gen->add_option("--seed", g_seed, "rng seed (default: env DYNMATCH_SEED or 1)");
    gen->add_option("--out", g_out, "output file")->required();

    // run
    auto* run = app.add_subcommand("run", "replay a sequence through an engine");
    std::string r_engine = "full", r_in, r_verify = "each", r_json;
    run->add_option("--engine", r_engine, "full|boot|naive");
    run->add_option("--in", r_in, "sequence file")->required();
    run->add_option("--verify", r_verify, "none|final|each");
    run->add_option("--json-out", r_json, "report file (default: stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "ops-per-update over a size sweep");
    std::string b_engine = "full", b_kind = "decremental_complete", b_nlist = "128,256,512", b_csv;
    std::uint64_t b_seed = default_seed();
    bench->add_option("--engine", b_engine, "full|boot|naive");
    bench->add_option("--kind", b_kind, "workload kind");
    bench->add_option("--n-list", b_nlist, "comma-separated sizes");
    bench->add_option("--seed", b_seed, "rng seed");
    bench->add_option("--csv-out", b_csv, "csv file (default: stdout)");

    // fuzz
    auto* fz = app.add_subcommand("fuzz", "differential fuzzing, verify=each");
    long long f_trials = 50;
    std::uint64_t f_seed = default_seed();
    fz->add_option("--trials", f_trials, "trial count")->check(CLI::PositiveNumber);
    fz->add_option("--seed", f_seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Workload w = gen_workload(workload_kind_from_string(g_kind), g_n, g_len, g_p, g_seed);
            write_sequence_file(g_out, w);
            std::cout << "wrote " << w.events.size() << " events to " << g_out << "\n";
        } else if (*run) {
            Workload w = read_sequence_file(r_in);
            RunResult res = run_workload(engine_kind_from_string(r_engine), w,
                                         verify_mode_from_string(r_verify));
            emit_report(res.report, r_json);
            if (res.failed_at >= 0) {
                std::cerr << "verification failed at event " << res.failed_at << ": "
                          << res.failure << "\n"
                          << "shrunk failing prefix (" << res.failing_prefix.events.size()
                          << " events):\n"
                          << sequence_to_string(res.failing_prefix);
                return 1;
            }
        } else if (*bench) {
            std::ostringstream csv;
            csv << "engine,kind,n,updates,ops_total,ops_per_update,wall_ms,matching\n";
            for (int n : parse_n_list(b_nlist)) {
                long long len = b_kind == "decremental_complete" ? 0 : 10LL * n;
                Workload w = gen_workload(workload_kind_from_string(b_kind), n, len, 0.5, b_seed);
                RunResult res =
                    run_workload(engine_kind_from_string(b_engine), w, VerifyMode::None);
                csv << res.report.engine << ',' << b_kind << ',' << n << ','
                    << res.report.updates_applied << ',' << res.report.elementary_ops_total << ','
                    << res.report.elementary_ops_per_update << ','
                    << res.report.wall_time_ns / 1e6 << ',' << res.report.final_matching_size
                    << '\n';
            }
            if (b_csv.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream f(b_csv, std::ios::binary);
                f << csv.str();
            }
        } else if (*fz) {
            FuzzResult res = fuzz(f_trials, f_seed);
            std::cout << "trials " << res.trials << ", failures " << res.failures << "\n";
            for (const RunResult& r : res.failed_runs) {
                std::cerr << "failure: " << r.failure << "\nshrunk prefix:\n"
                          << sequence_to_string(r.failing_prefix);
            }
            if (res.failures) return 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
