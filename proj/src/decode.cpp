#include "graphcodes/decode.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace graphcodes {

uint32_t default_iteration_cap(uint32_t m) {
    return (uint32_t)std::ceil(4.0 * std::log2((double)std::max(m, 2u))) + 8;
}

BitVec local_round(const GraphCode& c, const BitVec& u, uint32_t part, unsigned t) {
    if (part >= c.topology().parts()) throw std::invalid_argument("local_round: part out of range");
    const uint32_t n = c.topology().degree();
    BitVec out = u;
    BitVec lw(n), dec(n);
    for (uint32_t v = 0; v < c.topology().vertices_per_part(); ++v) {
        c.extract_local(u, part, v, lw);
        dec = c.local().bounded_distance_decode(lw, t);
        if (dec != lw) c.deposit_local(dec, part, v, out);
    }
    return out;
}

DecodeResult algorithm_I(const GraphCode& c, const BitVec& y, const DecodeOptions& opt) {
    if (c.topology().parts() != 2)
        throw std::invalid_argument("algorithm_I: bipartite graph codes only");
    const uint32_t cap = opt.max_iters ? opt.max_iters
                                       : default_iteration_cap(c.topology().vertices_per_part());
    DecodeResult res;
    res.output = y;
    if (c.is_codeword(res.output)) {
        res.converged = true;
        res.stop = StopReason::codeword;
        return res;
    }

    auto record = [&](uint32_t part) {
        if (opt.transmitted)
            res.trace.push_back({res.iterations, part,
                                 hamming_distance(res.output, *opt.transmitted), 1});
    };

    BitVec two_rounds_ago; // word that entered the previous full round
    res.stop = StopReason::iteration_cap;
    while (res.iterations < cap) {
        BitVec before = res.output;
        res.output = local_round(c, res.output, 0, opt.t);
        ++res.iterations;
        record(0);
        if (res.iterations >= cap) break;
        res.output = local_round(c, res.output, 1, opt.t);
        ++res.iterations;
        record(1);
        if (c.is_codeword(res.output)) {
            res.stop = StopReason::codeword;
            break;
        }
        if (res.output == before) {
            res.stop = StopReason::fixed_point;
            break;
        }
        if (!two_rounds_ago.empty() && res.output == two_rounds_ago) {
            res.stop = StopReason::two_cycle;
            break;
        }
        two_rounds_ago = std::move(before);
    }
    res.converged = c.is_codeword(res.output);
    if (res.converged) res.stop = StopReason::codeword;
    return res;
}

DecodeResult algorithm_II(const GraphCode& c, const BitVec& y,
                          const ListDecodeOptions& opt, CandidateList* lists) {
    const uint32_t l = c.topology().parts();
    if (l < 3) throw std::invalid_argument("algorithm_II: needs at least 3 parts");

    std::vector<BitVec> current{y};
    CandidateList local_lists;
    CandidateList& cl = lists ? *lists : local_lists;
    cl.rounds.clear();
    cl.pre_dedup.clear();
    cl.rounds.push_back(current);
    cl.pre_dedup.push_back(1);

    DecodeResult res;
    for (uint32_t round = 1; round <= opt.rounds; ++round) {
        std::vector<BitVec> next;
        std::unordered_set<BitVec, BitVec::Hasher> seen;
        std::vector<uint64_t> new_per_part(l, 0);
        std::vector<uint64_t> best_per_part(l, UINT64_MAX);
        for (const BitVec& w : current) {
            for (uint32_t p = 0; p < l; ++p) {
                BitVec cand = local_round(c, w, p, opt.t);
                if (opt.transmitted)
                    best_per_part[p] = std::min(best_per_part[p],
                                                (uint64_t)hamming_distance(cand, *opt.transmitted));
                if (seen.insert(cand).second) {
                    next.push_back(std::move(cand));
                    ++new_per_part[p];
                }
            }
        }
        cl.pre_dedup.push_back((uint64_t)current.size() * l);
        if (opt.transmitted)
            for (uint32_t p = 0; p < l; ++p)
                res.trace.push_back({round, p, best_per_part[p], new_per_part[p]});
        current = std::move(next);
        cl.rounds.push_back(current);
        res.iterations = round;
    }

    // cleanup pass: iterate each candidate to a fixed point on parts 0 and 1
    GraphCode pair_code(c.topology().bipartite_restriction(0, 1), c.local());
    std::vector<BitVec> cleaned;
    cleaned.reserve(current.size());
    DecodeOptions clean_opt;
    clean_opt.t = opt.t;
    clean_opt.max_iters = opt.cleanup_max_iters;
    for (const BitVec& w : current)
        cleaned.push_back(algorithm_I(pair_code, w, clean_opt).output);

    res.output = select_closest(c, cleaned, y);
    res.converged = c.is_codeword(res.output);
    res.stop = res.converged ? StopReason::codeword : StopReason::iteration_cap;
    return res;
}

BitVec select_closest(const GraphCode& c, const std::vector<BitVec>& candidates,
                      const BitVec& y) {
    if (candidates.empty()) throw std::invalid_argument("select_closest: empty candidate list");
    const BitVec* best = nullptr;
    bool best_cw = false;
    size_t best_d = 0;
    for (const BitVec& w : candidates) {
        bool cw = c.is_codeword(w);
        size_t d = hamming_distance(w, y);
        bool better;
        if (!best) better = true;
        else if (cw != best_cw) better = cw;
        else if (d != best_d) better = d < best_d;
        else better = w.lex_less(*best);
        if (better) { best = &w; best_cw = cw; best_d = d; }
    }
    return *best;
}

GoodBadSets good_bad_sets(const GraphCode& c, const BitVec& error_set,
                          uint32_t part, unsigned t) {
    if (error_set.size() != c.length())
        throw std::invalid_argument("good_bad_sets: error set has wrong length");
    if (part >= c.topology().parts())
        throw std::invalid_argument("good_bad_sets: part out of range");
    const uint32_t n = c.topology().degree();
    const unsigned d0 = c.local().d0();
    GoodBadSets gb;
    for (uint32_t v = 0; v < c.topology().vertices_per_part(); ++v) {
        const uint32_t* e = c.topology().incident_ptr(part, v);
        uint32_t cnt = 0;
        for (uint32_t s = 0; s < n; ++s) cnt += error_set.get(e[s]);
        if (cnt <= t) {
            gb.good.push_back(v);
            gb.errors_at_good += cnt; // parts partition edges: no double count
        } else if (cnt >= d0 - t) {
            gb.bad.push_back(v);
        }
    }
    return gb;
}

ReductionCheck reduction_check(const GraphCode& c, const BitVec& error_set,
                               unsigned t, double eps) {
    ReductionCheck rc;
    for (uint32_t p = 0; p < c.topology().parts(); ++p) {
        GoodBadSets gb = good_bad_sets(c, error_set, p, t);
        if ((double)gb.errors_at_good >= (double)t * gb.bad.size() + eps * c.length()) {
            rc.holds = true;
            rc.witness = (int)p;
            rc.errors_at_good = gb.errors_at_good;
            rc.bad_count = gb.bad.size();
            return rc;
        }
    }
    return rc;
}

} // namespace graphcodes
