// Command line front end: threshold evaluation, reference tables, decoding
// simulations, and exhaustive small-instance checks.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphcodes/decode.hpp"
#include "graphcodes/graph_code.hpp"
#include "graphcodes/hypergraph.hpp"
#include "graphcodes/linear_code.hpp"
#include "graphcodes/rng.hpp"
#include "graphcodes/thresholds.hpp"

using json = nlohmann::ordered_json;
namespace gc = graphcodes;
namespace th = graphcodes::thresholds;

namespace {

// "hamming:3", "golay23", "bch_31_21", "spc:8", "repetition:5", "file:PATH"
gc::BinaryLinearCode make_local_code(const std::string& kind) {
    auto colon = kind.find(':');
    std::string head = kind.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : kind.substr(colon + 1);
    auto need_uint = [&]() -> unsigned {
        if (arg.empty()) throw std::invalid_argument("local code '" + head + "' needs :<number>");
        return (unsigned)std::stoul(arg);
    };
    if (head == "hamming") return gc::BinaryLinearCode::hamming(need_uint());
    if (head == "golay23") return gc::BinaryLinearCode::golay23();
    if (head == "bch_31_21") return gc::BinaryLinearCode::bch_31_21();
    if (head == "spc") return gc::BinaryLinearCode::single_parity_check(need_uint());
    if (head == "repetition") return gc::BinaryLinearCode::repetition(need_uint());
    if (head == "file") {
        if (arg.empty()) throw std::invalid_argument("local code 'file' needs :<path>");
        return gc::BinaryLinearCode::from_file(arg);
    }
    throw std::invalid_argument("unknown local code kind '" + kind + "'");
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out_path);
    f << payload;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

json tolerances_block() {
    return json{{"scan_floor", 1e-9},
                {"bisection", "to double precision"},
                {"stationarity_residual_max", 1e-12}};
}

// ---------------- threshold ----------------

struct ThresholdArgs {
    unsigned n = 0, t = 1, d0 = 3, l = 2;
    double tau = 0, delta0 = 0, nf = 0;
    std::string eps_mode = "zero";
    std::string format = "json", out;
};

int run_threshold(const std::string& mode, const ThresholdArgs& a) {
    json rep;
    if (mode == "bipartite") {
        auto r = th::sigma0_bipartite(a.n, a.t);
        rep["query"] = {{"op", "sigma0_bipartite"}, {"n", a.n}, {"t", a.t}};
        rep["value"] = r.value;
        rep["roots"] = r.roots;
        rep["residual"] = r.residual;
        rep["method"] = r.method;
    } else if (mode == "bipartite-asymptotic") {
        double v = th::sigma0_bipartite_asymptotic(a.nf, a.tau);
        rep["query"] = {{"op", "sigma0_bipartite_asymptotic"}, {"n", a.nf}, {"tau", a.tau}};
        rep["value"] = v;
        rep["eps"] = (1.0 + std::log2(a.nf)) / a.nf;
        rep["method"] = "feasibility interval upper boundary";
    } else if (mode == "hypergraph") {
        auto r = th::gamma0_hypergraph(a.n, a.t, a.d0, a.l);
        rep["query"] = {{"op", "gamma0_hypergraph"}, {"n", a.n}, {"t", a.t}, {"d0", a.d0}, {"l", a.l}};
        rep["value"] = r.value;
        rep["roots"] = r.roots;
        rep["residual"] = r.residual;
        rep["method"] = r.method;
    } else if (mode == "distance") {
        auto r = th::delta_bound(a.n, a.d0, a.l);
        rep["query"] = {{"op", "delta_bound"}, {"n", a.n}, {"d0", a.d0}, {"l", a.l}};
        rep["value"] = r.value;
        rep["roots"] = r.roots;
        rep["residual"] = r.residual;
        rep["method"] = r.method;
    } else if (mode == "asymptotic-delta") {
        double v = th::delta_asymptotic(a.l, a.delta0);
        rep["query"] = {{"op", "delta_asymptotic"}, {"l", a.l}, {"delta0", a.delta0}};
        rep["value"] = v;
        rep["method"] = "bisection on h(x)/x";
    } else if (mode == "asymptotic-gamma0") {
        double eps = 0.0;
        if (a.eps_mode == "finite-n") {
            if (a.n == 0) throw std::invalid_argument("--eps-mode finite-n needs --n");
            eps = std::log2((double)a.n) / a.n;
        } else if (a.eps_mode != "zero") {
            throw std::invalid_argument("--eps-mode must be zero or finite-n");
        }
        auto r = th::gamma0_asymptotic(a.l, a.delta0, eps);
        rep["query"] = {{"op", "gamma0_asymptotic"}, {"l", a.l}, {"delta0", a.delta0},
                        {"eps_mode", a.eps_mode}, {"eps", eps}};
        rep["value"] = r.value;
        rep["tau"] = r.tau;
        rep["method"] = "nested scan over designed fraction";
    } else {
        throw std::invalid_argument("unknown threshold mode " + mode);
    }
    rep["tolerances"] = tolerances_block();
    emit(rep.dump(2) + "\n", a.out);
    return 0;
}

// ---------------- tables ----------------

struct Row {
    std::vector<std::pair<std::string, std::string>> cells;
    void add(const std::string& k, const std::string& v) { cells.emplace_back(k, v); }
    void add(const std::string& k, double v) { cells.emplace_back(k, fmt_double(v)); }
    void add(const std::string& k, unsigned v) { cells.emplace_back(k, std::to_string(v)); }
};

std::string render_rows(const std::vector<Row>& rows, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            for (const auto& [k, v] : r.cells) {
                try { o[k] = std::stod(v); } catch (...) { o[k] = v; }
            }
            arr.push_back(o);
        }
        return arr.dump(2) + "\n";
    }
    std::ostringstream csv;
    for (size_t i = 0; i < rows[0].cells.size(); ++i)
        csv << rows[0].cells[i].first << (i + 1 == rows[0].cells.size() ? "\n" : ",");
    for (const auto& r : rows)
        for (size_t i = 0; i < r.cells.size(); ++i)
            csv << r.cells[i].second << (i + 1 == r.cells.size() ? "\n" : ",");
    return csv.str();
}

int run_tables(const std::string& which, const std::string& format, const std::string& out) {
    std::vector<Row> rows;
    if (which == "example1") {
        for (auto [n, t, d0, k] : {std::tuple{23u, 3u, 7u, 12u}, {31u, 2u, 5u, 21u}}) {
            auto r = th::sigma0_bipartite(n, t);
            Row row;
            row.add("n", n);
            row.add("l", 2u);
            row.add("t", t);
            row.add("d0", d0);
            row.add("rate_lower", 2.0 * k / n - 1.0);
            row.add("sigma0", r.value);
            row.add("error_fraction", r.value * t / n);
            rows.push_back(row);
        }
    } else if (which == "example2_n511" || which == "rate_half") {
        std::vector<std::pair<unsigned, unsigned>> cells;
        if (which == "example2_n511")
            for (unsigned l : {17u, 23u, 28u, 34u, 40u, 45u, 51u}) cells.push_back({511u, l});
        else
            cells = {{127u, 9u}, {255u, 16u}, {511u, 28u}, {1023u, 51u}};
        for (auto [n, l] : cells) {
            unsigned r = (unsigned)std::round(std::log2((double)n + 1));
            unsigned k = n - r;
            Row row;
            row.add("n", n);
            row.add("l", l);
            row.add("t", 1u);
            row.add("d0", 3u);
            row.add("rate_lower", ((double)l * k - (double)(l - 1) * n) / n);
            row.add("gamma0", th::gamma0_hypergraph(n, 1, 3, l).value);
            row.add("delta", th::delta_bound(n, 3, l).value);
            rows.push_back(row);
        }
    } else if (which == "examples34") {
        struct Cfg { unsigned l; double d0; double ref; };
        for (auto [l, d0, ref] : {Cfg{3, 0.05, 0.0112}, Cfg{10, 0.01, 0.00599}}) {
            auto g = th::gamma0_asymptotic(l, d0);
            Row row;
            row.add("l", l);
            row.add("delta0", d0);
            row.add("rate_lower", l * (1.0 - th::entropy(d0)) - (l - 1.0));
            row.add("tau", g.tau);
            row.add("gamma0", g.value);
            row.add("delta", th::delta_asymptotic(l, d0));
            row.add("delta_reference", ref);
            rows.push_back(row);
        }
    } else {
        throw std::invalid_argument("unknown table " + which);
    }
    emit(render_rows(rows, format), out);
    return 0;
}

// ---------------- simulate ----------------

struct SimArgs {
    std::string local;
    unsigned l = 2, m = 0, t = 1, s = 2;
    int errors = -1;
    double error_frac = -1;
    unsigned trials = 1, max_iters = 0, jobs = 1;
    uint64_t seed = 0;
    bool trace = false;
    std::string format = "json", out;
};

struct TrialOutcome {
    bool success = false, converged = false;
    uint32_t iterations = 0;
    uint64_t list_size = 1;
    uint64_t final_error_weight = 0;
    uint64_t seed = 0;
    std::vector<gc::TraceEntry> trace;
};

const char* stop_name(gc::StopReason s) {
    switch (s) {
        case gc::StopReason::codeword: return "codeword";
        case gc::StopReason::fixed_point: return "fixed_point";
        case gc::StopReason::two_cycle: return "two_cycle";
        default: return "iteration_cap";
    }
}

int run_simulate(const SimArgs& a) {
    gc::BinaryLinearCode local = make_local_code(a.local);
    if (a.t > local.t_max())
        throw std::invalid_argument("--t exceeds the decoding radius of the local code");
    const uint64_t N = (uint64_t)a.m * local.n();
    uint64_t weight;
    if (a.errors >= 0) weight = (uint64_t)a.errors;
    else if (a.error_frac >= 0) weight = (uint64_t)((double)N * a.error_frac);
    else throw std::invalid_argument("one of --errors / --error-frac is required");
    if (weight > N) throw std::invalid_argument("error weight exceeds code length");

    std::vector<TrialOutcome> outcomes(a.trials);
    std::vector<std::string> stops(a.trials);
    std::atomic<unsigned> counter{0};
    auto worker = [&]() {
        for (;;) {
            unsigned trial = counter.fetch_add(1);
            if (trial >= a.trials) return;
            uint64_t ts = gc::mix_seed(a.seed, trial);
            gc::SplitMix64 rng(ts);
            gc::Hypergraph topo = gc::Hypergraph::sample(a.l, a.m, local.n(), rng.next());
            gc::GraphCode code(std::move(topo), local);
            // error support: distinct positions via partial shuffle draws
            gc::BitVec y((size_t)N);
            for (uint64_t placed = 0; placed < weight;) {
                uint64_t p = rng.below(N);
                if (!y.get(p)) { y.set(p, true); ++placed; }
            }
            gc::BitVec zero((size_t)N);
            TrialOutcome& res = outcomes[trial];
            res.seed = ts;
            if (a.l == 2) {
                gc::DecodeOptions opt;
                opt.t = a.t;
                opt.max_iters = a.max_iters;
                opt.transmitted = &zero;
                auto dr = gc::algorithm_I(code, y, opt);
                res.converged = dr.converged;
                res.success = dr.output == zero;
                res.iterations = dr.iterations;
                res.final_error_weight = dr.output.popcount();
                stops[trial] = stop_name(dr.stop);
                if (a.trace) res.trace = std::move(dr.trace);
            } else {
                gc::ListDecodeOptions opt;
                opt.t = a.t;
                opt.rounds = a.s;
                opt.cleanup_max_iters = a.max_iters;
                opt.transmitted = &zero;
                gc::CandidateList lists;
                auto dr = gc::algorithm_II(code, y, opt, &lists);
                res.converged = dr.converged;
                res.success = dr.output == zero;
                res.iterations = dr.iterations;
                res.list_size = lists.rounds.back().size();
                res.final_error_weight = dr.output.popcount();
                stops[trial] = stop_name(dr.stop);
                if (a.trace) res.trace = std::move(dr.trace);
            }
        }
    };
    unsigned jobs = std::max(1u, a.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th2 : pool) th2.join();

    uint64_t successes = 0;
    double iter_sum = 0;
    for (const auto& r : outcomes) {
        successes += r.success;
        iter_sum += r.iterations;
    }
    json rep;
    rep["query"] = {{"op", "simulate"}, {"local", a.local}, {"l", a.l}, {"m", a.m},
                    {"t", a.t}, {"errors", weight}, {"trials", a.trials},
                    {"seed", a.seed}, {"s", a.s}, {"max_iters", a.max_iters},
                    {"jobs", jobs}};
    rep["code"] = {{"n", local.n()}, {"k", local.k()}, {"d0", local.d0()},
                   {"N", N},
                   {"rate_lower_bound", (double)a.l * local.k() / local.n() - (a.l - 1.0)}};
    rep["trials"] = a.trials;
    rep["successes"] = successes;
    rep["success_rate"] = (double)successes / a.trials;
    rep["mean_iterations"] = iter_sum / a.trials;
    json results = json::array();
    for (unsigned i = 0; i < a.trials; ++i) {
        const auto& r = outcomes[i];
        results.push_back({{"trial", i}, {"seed", r.seed}, {"success", r.success},
                           {"converged", r.converged}, {"iterations", r.iterations},
                           {"stop", stops[i]}, {"list_size", r.list_size},
                           {"final_error_weight", r.final_error_weight}});
    }
    rep["results"] = std::move(results);
    emit(rep.dump(2) + "\n", a.out);
    if (a.trace) {
        // one JSON line per recorded step, trial-major, on stderr
        for (unsigned i = 0; i < a.trials; ++i)
            for (const auto& e : outcomes[i].trace) {
                json line = {{"trial", i}, {"iteration", e.iteration}, {"part", e.part},
                             {"error_weight", e.error_weight}, {"list_size", e.list_size}};
                std::cerr << line.dump() << "\n";
            }
    }
    return 0;
}

// ---------------- oracle ----------------

struct OracleArgs {
    std::string local;
    unsigned l = 2, m = 2, t = 1, s = 2, wmax = 1;
    uint64_t seed = 0;
    std::string out;
};

int run_oracle(const OracleArgs& a) {
    gc::BinaryLinearCode local = make_local_code(a.local);
    if (a.t > local.t_max())
        throw std::invalid_argument("--t exceeds the decoding radius of the local code");
    gc::Hypergraph topo = gc::Hypergraph::sample(a.l, a.m, local.n(), a.seed);
    gc::GraphCode code(std::move(topo), local);
    const uint64_t N = code.length();

    json rep;
    rep["query"] = {{"op", "oracle"}, {"local", a.local}, {"l", a.l}, {"m", a.m},
                    {"seed", a.seed}, {"t", a.t}, {"s", a.s}, {"wmax", a.wmax}};
    rep["code"] = {{"n", local.n()}, {"k", local.k()}, {"d0", local.d0()}, {"N", N},
                   {"dimension_lower_bound", code.dimension_lower_bound()}};
    if (N <= 16384) {
        uint64_t dim = code.dimension();
        rep["dimension"] = dim;
        if (dim <= 22) rep["min_distance"] = code.min_distance_small();
    }

    gc::BitVec zero((size_t)N);
    json by_weight = json::array();
    uint64_t total = 0, good = 0;
    std::vector<unsigned> idx;
    for (unsigned w = 1; w <= a.wmax; ++w) {
        uint64_t patterns = 0, successes = 0;
        idx.resize(w);
        for (unsigned i = 0; i < w; ++i) idx[i] = i;
        while (true) {
            gc::BitVec y((size_t)N);
            for (unsigned i : idx) y.set(i, true);
            gc::BitVec out;
            if (a.l == 2) {
                gc::DecodeOptions opt;
                opt.t = a.t;
                out = gc::algorithm_I(code, y, opt).output;
            } else {
                gc::ListDecodeOptions opt;
                opt.t = a.t;
                opt.rounds = a.s;
                out = gc::algorithm_II(code, y, opt).output;
            }
            ++patterns;
            successes += out == zero;
            if (patterns > 2000000) throw std::invalid_argument("oracle: too many patterns, lower --wmax");
            int j = (int)w - 1;
            while (j >= 0 && idx[(size_t)j] == N - w + (unsigned)j) --j;
            if (j < 0) break;
            ++idx[(size_t)j];
            for (unsigned i = (unsigned)j + 1; i < w; ++i) idx[i] = idx[i - 1] + 1;
        }
        by_weight.push_back({{"weight", w}, {"patterns", patterns}, {"successes", successes}});
        total += patterns;
        good += successes;
    }
    rep["patterns_checked"] = total;
    rep["decode_successes"] = good;
    rep["by_weight"] = std::move(by_weight);
    emit(rep.dump(2) + "\n", a.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph code construction, decoding and threshold evaluation"};
    app.require_subcommand(1);

    // threshold
    auto* thr = app.add_subcommand("threshold", "evaluate an ensemble threshold");
    thr->require_subcommand(1);
    ThresholdArgs ta;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", ta.format)->check(CLI::IsMember({"json"}));
        sub->add_option("--out", ta.out);
    };
    auto* t_bip = thr->add_subcommand("bipartite", "degree-2 correctable fraction");
    t_bip->add_option("--n", ta.n)->required();
    t_bip->add_option("--t", ta.t)->required();
    add_common(t_bip);
    auto* t_bipa = thr->add_subcommand("bipartite-asymptotic", "large-n degree-2 threshold");
    t_bipa->add_option("--n", ta.nf)->required();
    t_bipa->add_option("--tau", ta.tau)->required();
    add_common(t_bipa);
    auto* t_hyp = thr->add_subcommand("hypergraph", "multipartite decodable fraction");
    t_hyp->add_option("--n", ta.n)->required();
    t_hyp->add_option("--t", ta.t)->required();
    t_hyp->add_option("--d0", ta.d0)->required();
    t_hyp->add_option("--l", ta.l)->required();
    add_common(t_hyp);
    auto* t_dist = thr->add_subcommand("distance", "ensemble relative distance");
    t_dist->add_option("--n", ta.n)->required();
    t_dist->add_option("--d0", ta.d0)->required();
    t_dist->add_option("--l", ta.l)->required();
    add_common(t_dist);
    auto* t_ad = thr->add_subcommand("asymptotic-delta", "limit relative distance");
    t_ad->add_option("--l", ta.l)->required();
    t_ad->add_option("--delta0", ta.delta0)->required();
    add_common(t_ad);
    auto* t_ag = thr->add_subcommand("asymptotic-gamma0", "limit decoding threshold");
    t_ag->add_option("--l", ta.l)->required();
    t_ag->add_option("--delta0", ta.delta0)->required();
    t_ag->add_option("--eps-mode", ta.eps_mode)->check(CLI::IsMember({"zero", "finite-n"}));
    t_ag->add_option("--n", ta.n);
    add_common(t_ag);

    // tables
    auto* tab = app.add_subcommand("tables", "reference tables");
    std::string which, tab_format = "csv", tab_out;
    tab->add_option("which", which)->required()
        ->check(CLI::IsMember({"example1", "example2_n511", "rate_half", "examples34"}));
    tab->add_option("--format", tab_format)->check(CLI::IsMember({"csv", "json"}));
    tab->add_option("--out", tab_out);

    // simulate
    auto* sim = app.add_subcommand("simulate", "random decoding trials");
    SimArgs sa;
    sim->add_option("--local", sa.local)->required();
    sim->add_option("--l", sa.l)->required();
    sim->add_option("--m", sa.m)->required();
    sim->add_option("--t", sa.t);
    sim->add_option("--errors", sa.errors);
    sim->add_option("--error-frac", sa.error_frac);
    sim->add_option("--trials", sa.trials);
    sim->add_option("--seed", sa.seed)->required();
    sim->add_option("--s", sa.s);
    sim->add_option("--max-iters", sa.max_iters);
    sim->add_option("--jobs", sa.jobs);
    sim->add_flag("--trace", sa.trace);
    sim->add_option("--format", sa.format)->check(CLI::IsMember({"json"}));
    sim->add_option("--out", sa.out);

    // oracle
    auto* ora = app.add_subcommand("oracle", "exhaustive small-instance verification");
    OracleArgs oa;
    ora->add_option("--local", oa.local)->required();
    ora->add_option("--l", oa.l)->required();
    ora->add_option("--m", oa.m)->required();
    ora->add_option("--seed", oa.seed)->required();
    ora->add_option("--t", oa.t);
    ora->add_option("--s", oa.s);
    ora->add_option("--wmax", oa.wmax);
    ora->add_option("--out", oa.out);

    try {
        app.parse(argc, argv);
        if (thr->parsed())
            return run_threshold(thr->get_subcommands().at(0)->get_name(), ta);
        if (tab->parsed()) return run_tables(which, tab_format, tab_out);
        if (sim->parsed()) return run_simulate(sa);
        if (ora->parsed()) return run_oracle(oa);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are exit 1 (help is 0)
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
}
