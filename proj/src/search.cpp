#include "chindex/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "chindex/group_ring.hpp"
#include "chindex/residual.hpp"

namespace chindex {

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_guard;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_guard);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

void validate_twist(unsigned r) {
    if (r < 3 || r % 2 == 0) throw std::invalid_argument("r must be odd and at least 3, got " + std::to_string(r));
}

}  // namespace

unsigned SearchConfig::first_level(const FieldSpec& F) const { return n_min == 0 ? F.min_level() : n_min; }

void SearchConfig::validate(const FieldSpec& F) const {
    if (n_min != 0 && n_min < F.min_level())
        throw std::invalid_argument("n_min = " + std::to_string(n_min) + " is below max(a, 1) = " + std::to_string(F.min_level()));
    if (n_max < first_level(F))
        throw std::invalid_argument("n_max = " + std::to_string(n_max) + " is below n_min = " + std::to_string(first_level(F)));
    if (primes_per_level == 0) throw std::invalid_argument("primes_per_level must be at least 1");
    if (window == 0) throw std::invalid_argument("stabilization window must be at least 1");
}

std::vector<u64> level_primes(const FieldSpec& F, unsigned n, const SearchConfig& config) {
    u64 modulus = F.d;
    for (unsigned i = 0; i < n; ++i) {
        if (modulus > config.ell_bound / F.p) return {};
        modulus *= F.p;
    }
    return first_primes_in_progression(modulus, config.ell_bound, config.primes_per_level);
}

IndexReport index_upper_bound(const std::vector<CandidateRecord>& records, unsigned window) {
    IndexReport report;
    report.candidates = records;
    std::map<unsigned, bool> productive;
    for (const auto& rec : records) {
        if (rec.accepted != (rec.ire < rec.ima)) throw std::logic_error("candidate acceptance flag is inconsistent");
        productive[rec.n] = productive[rec.n] || rec.accepted;
        if (!rec.accepted) continue;
        if (!report.upper_bound_valuation || rec.ire < *report.upper_bound_valuation) {
            report.upper_bound_valuation = rec.ire;
            report.witness = rec;
        }
    }
    // Running minimum after each productive level.
    std::vector<unsigned> running;
    unsigned current = std::numeric_limits<unsigned>::max();
    for (const auto& [n, has_accepted] : productive) {
        if (!has_accepted) continue;
        for (const auto& rec : records)
            if (rec.n == n && rec.accepted) current = std::min(current, rec.ire);
        running.push_back(current);
    }
    if (window > 0 && running.size() >= window)
        report.stabilized = std::all_of(running.end() - window, running.end(), [&](unsigned v) { return v == running.back(); });
    return report;
}

std::vector<IndexReport> full_run(const FieldSpec& F, unsigned r, const SearchConfig& config, const std::vector<CharacterClass>& classes) {
    validate_twist(r);
    config.validate(F);

    struct Task {
        unsigned n;
        u64 ell;
    };
    std::vector<Task> tasks;
    for (unsigned n = config.first_level(F); n <= config.n_max; ++n)
        for (u64 ell : level_primes(F, n, config)) tasks.push_back({n, ell});

    std::vector<std::optional<GroupRingElt>> vectors(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        const auto ctx = ResidualContext::make(F, tasks[i].ell, tasks[i].n, r);
        vectors[i] = residual_vector(ctx, F.d);
    });

    // T_chi and its full span, per class and level.
    struct Generator {
        std::optional<GroupRingElt> T;
        unsigned ima = 0;
    };
    std::map<std::pair<std::size_t, unsigned>, Generator> generators;
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& task : tasks) generators[{c, task.n}];
    for (auto& [key, gen] : generators) {
        const RingAmbient amb(F.group, F.p, key.second);
        gen.T = build_T_chi(amb, classes[key.first].representative);
        gen.ima = ima(classes[key.first].representative, F.p, key.second);
        const unsigned full = chi_span_order(*gen.T, GroupRingElt::one(amb)).valuation;
        if (full != gen.ima) throw std::logic_error("T_chi does not span a chi-part of the expected order");
    }

    std::vector<std::vector<CandidateRecord>> records(classes.size(), std::vector<CandidateRecord>(tasks.size()));
    parallel_for(classes.size() * tasks.size(), config.threads, [&](std::size_t k) {
        const std::size_t c = k / tasks.size();
        const std::size_t t = k % tasks.size();
        const Generator& gen = generators.at({c, tasks[t].n});
        CandidateRecord rec;
        rec.ell = tasks[t].ell;
        rec.n = tasks[t].n;
        rec.ima = gen.ima;
        rec.ire = residual_index(*gen.T, gen.ima, *vectors[t]);
        rec.accepted = rec.ire < rec.ima;
        records[c][t] = rec;
    });

    std::vector<IndexReport> reports;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        IndexReport report = index_upper_bound(records[c], config.window);
        report.character_class = classes[c];
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<IndexReport> full_run(const FieldSpec& F, unsigned r, const SearchConfig& config) {
    return full_run(F, r, config, qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), F.p));
}

std::vector<CandidateRecord> scan_candidates(const FieldSpec& F, const CharacterClass& cls, unsigned r, const SearchConfig& config) {
    return full_run(F, r, config, {cls}).front().candidates;
}

}  // namespace chindex
