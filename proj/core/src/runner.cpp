#include "dynmatch/runner.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dynmatch/bootstrap.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/rng.hpp"
#include "dynmatch/scheduler.hpp"

namespace dynmatch {

std::string to_string(EngineKind k) {
    switch (k) {
        case EngineKind::Full: return "full";
        case EngineKind::Boot: return "boot";
        case EngineKind::Naive: return "naive";
    }
    return "?";
}

std::string to_string(VerifyMode m) {
    switch (m) {
        case VerifyMode::None: return "none";
        case VerifyMode::Final: return "final";
        case VerifyMode::Each: return "each";
    }
    return "?";
}

EngineKind engine_kind_from_string(const std::string& s) {
    if (s == "full") return EngineKind::Full;
    if (s == "boot") return EngineKind::Boot;
    if (s == "naive") return EngineKind::Naive;
    throw std::invalid_argument("unknown engine kind: " + s);
}

VerifyMode verify_mode_from_string(const std::string& s) {
    if (s == "none") return VerifyMode::None;
    if (s == "final") return VerifyMode::Final;
    if (s == "each") return VerifyMode::Each;
    throw std::invalid_argument("unknown verify mode: " + s);
}

std::string report_to_json(const RunReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["updates_applied"] = r.updates_applied;
    j["engine"] = r.engine;
    j["verify_mode"] = r.verify_mode;
    j["verified"] = r.verified;
    j["final_matching_size"] = r.final_matching_size;
    j["elementary_ops_total"] = r.elementary_ops_total;
    j["elementary_ops_per_update"] = r.elementary_ops_per_update;
    j["wall_time_ns"] = r.wall_time_ns;
    return j.dump(2) + "\n";
}

namespace {

int ceil_sqrt(int n) {
    int s = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (s * s < n) ++s;
    return std::max(1, s);
}

// Uniform adapter over the three engines so the replay/verify loop is
// engine-agnostic.
struct AnyEngine {
    EngineKind kind;
    std::unique_ptr<Engine> full;
    std::unique_ptr<BootState> boot;
    std::unique_ptr<NaiveEngine> naive;
    OpCounter side_ops;  // boot and naive count here; full owns its counter

    explicit AnyEngine(EngineKind k, int n) : kind(k) {
        switch (kind) {
            case EngineKind::Full:
                full = std::make_unique<Engine>(engine_new(n));
                break;
            case EngineKind::Boot:
                boot = std::make_unique<BootState>(boot_new(n, ceil_sqrt(n)));
                boot->set_op_counter(&side_ops);
                break;
            case EngineKind::Naive:
                naive = std::make_unique<NaiveEngine>(n);
                naive->set_op_counter(&side_ops);
                break;
        }
    }

    void step(const UpdateEvent& ev) {
        switch (kind) {
            case EngineKind::Full:
                apply(*full, ev);
                break;
            case EngineKind::Boot:
                if (ev.kind == UpdateEvent::Insert)
                    boot_insert(*boot, ev.u, ev.v);
                else
                    boot_delete(*boot, ev.u, ev.v);
                break;
            case EngineKind::Naive:
                naive->apply(ev);
                break;
        }
    }

    Matching matching() const {
        switch (kind) {
            case EngineKind::Full: return engine_matching(*full);
            case EngineKind::Boot: return boot_matching(*boot);
            case EngineKind::Naive: return naive->matching();
        }
        return {};
    }

    std::vector<std::string> coherence() const {
        switch (kind) {
            case EngineKind::Full: return check_engine(*full);
            case EngineKind::Boot: return check_bootstrap(*boot);
            case EngineKind::Naive: return {};
        }
        return {};
    }

    std::uint64_t ops() const {
        return kind == EngineKind::Full ? full->ops.count : side_ops.count;
    }
};

// Checks the engine against an independently maintained mirror graph.
std::string verify_now(const AnyEngine& eng, const DynGraph& truth) {
    for (const std::string& s : eng.coherence()) return s;
    for (const Violation& v : check_matching(truth, eng.matching())) return v.describe();
    return {};
}

RunResult run_once(EngineKind kind, const Workload& w, VerifyMode mode) {
    RunResult res;
    res.report.n = w.n;
    res.report.engine = to_string(kind);
    res.report.verify_mode = to_string(mode);

    auto t0 = std::chrono::steady_clock::now();
    AnyEngine eng(kind, w.n);
    DynGraph truth(w.n);
    bool ok = true;
    for (size_t i = 0; i < w.events.size() && ok; ++i) {
        const UpdateEvent& ev = w.events[i];
        try {
            eng.step(ev);
            if (ev.kind == UpdateEvent::Insert)
                truth.insert_edge(ev.u, ev.v);
            else
                truth.delete_edge(ev.u, ev.v);
            ++res.report.updates_applied;
            if (mode == VerifyMode::Each) {
                std::string bad = verify_now(eng, truth);
                if (!bad.empty()) {
                    res.failed_at = static_cast<long long>(i);
                    res.failure = bad;
                    ok = false;
                }
            }
        } catch (const std::exception& ex) {
            res.failed_at = static_cast<long long>(i);
            res.failure = std::string("exception: ") + ex.what();
            ok = false;
        }
    }
    if (ok && mode != VerifyMode::None) {
        std::string bad = verify_now(eng, truth);
        if (!bad.empty()) {
            res.failed_at = static_cast<long long>(w.events.size()) - 1;
            res.failure = bad;
            ok = false;
        }
    }
    auto t1 = std::chrono::steady_clock::now();

    res.report.verified = ok && mode != VerifyMode::None;
    res.report.final_matching_size = static_cast<long long>(eng.matching().size());
    res.report.elementary_ops_total = eng.ops();
    res.report.elementary_ops_per_update =
        res.report.updates_applied
            ? static_cast<double>(res.report.elementary_ops_total) / res.report.updates_applied
            : 0.0;
    res.report.wall_time_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    return res;
}

bool still_fails(EngineKind kind, const Workload& w) {
    return run_once(kind, w, VerifyMode::Each).failed_at >= 0;
}

// Drops event `skip`, then any suffix events invalidated by the removal.
Workload drop_event(const Workload& w, size_t skip) {
    Workload out;
    out.n = w.n;
    DynGraph g(w.n);
    for (size_t i = 0; i < w.events.size(); ++i) {
        if (i == skip) continue;
        const UpdateEvent& ev = w.events[i];
        bool present = g.neighbors(ev.u).count(ev.v) > 0;
        if (ev.kind == UpdateEvent::Insert ? present : !present) continue;
        if (ev.kind == UpdateEvent::Insert)
            g.insert_edge(ev.u, ev.v);
        else
            g.delete_edge(ev.u, ev.v);
        out.events.push_back(ev);
    }
    return out;
}

}  // namespace

Workload shrink_failing(EngineKind kind, const Workload& w) {
    Workload cur = w;
    RunResult r = run_once(kind, cur, VerifyMode::Each);
    if (r.failed_at < 0) return cur;  // not failing: nothing to shrink
    cur.events.resize(static_cast<size_t>(r.failed_at) + 1);
    int budget = 2000;
    bool improved = true;
    while (improved && budget > 0) {
        improved = false;
        for (size_t i = 0; i < cur.events.size() && budget > 0; ++i) {
            Workload cand = drop_event(cur, i);
            --budget;
            if (cand.events.size() >= cur.events.size()) continue;
            RunResult cr = run_once(kind, cand, VerifyMode::Each);
            if (cr.failed_at >= 0) {
                cand.events.resize(static_cast<size_t>(cr.failed_at) + 1);
                cur = std::move(cand);
                improved = true;
                break;
            }
        }
    }
    return cur;
}

RunResult run_workload(EngineKind kind, const Workload& w, VerifyMode mode) {
    RunResult res = run_once(kind, w, mode);
    if (res.failed_at >= 0) {
        Workload prefix = w;
        prefix.events.resize(static_cast<size_t>(res.failed_at) + 1);
        res.failing_prefix = shrink_failing(kind, prefix);
    }
    return res;
}

FuzzResult fuzz(long long trials, std::uint64_t seed) {
    static const int sizes[] = {16, 32, 64, 128};
    static const double biases[] = {0.3, 0.5, 0.8};
    Rng rng(seed);
    FuzzResult out;
    for (long long t = 0; t < trials; ++t) {
        WorkloadKind kind = static_cast<WorkloadKind>(t % 4);
        int n = sizes[(t / 4) % 4];
        double p = biases[rng.below(3)];
        long long len = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(10 * n)));
        Workload w = gen_workload(kind, n, len, p, rng.next());
        RunResult r = run_workload(EngineKind::Full, w, VerifyMode::Each);
        ++out.trials;
        if (!r.report.verified) {
            ++out.failures;
            out.failed_runs.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace dynmatch
