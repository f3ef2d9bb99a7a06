#include "ccf/corpus.hpp"

#include "ccf/error.hpp"
#include "ccf/io.hpp"

#include <atomic>
#include <cstdio>
#include <random>
#include <thread>

namespace ccf {

namespace {

Json entry_json(const CorpusEntry& e) {
    Json doc{{"schema", kReportSchema}, {"command", "corpus-entry"}, {"index", e.index}, {"context", context_to_json(*e.ctx)}};
    doc["ok"] = e.ok();
    doc["error"] = e.error.empty() ? Json(nullptr) : Json(e.error);
    if (e.period) {
        doc["period"] = to_json(*e.period);
        doc["summary"] = to_json(e.period->report)["summary"];
    }
    doc["round_trip"] = e.round_trip;
    doc["rebuilt"] = e.rebuilt ? context_to_json(*e.rebuilt) : Json(nullptr);
    if (e.growth) {
        Json g = to_json(*e.growth);
        g.erase("rows");
        doc["growth"] = g;
    }
    return doc;
}

}  // namespace

SurdContextPtr random_surd(Ring ring, std::uint64_t seed, std::size_t index, long coeff_bound) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 gen(seq);
    const auto span = static_cast<std::uint64_t>(2 * coeff_bound + 1);
    auto coord = [&] { return Integer(static_cast<long>(gen() % span) - coeff_bound); };
    auto element = [&] {
        Integer x = coord();
        return RingElement(ring, x, coord());
    };
    for (;;) {
        RingElement a = element(), b = element(), c = element();
        if (a.is_zero()) continue;
        RingElement disc = b * b - RingElement(ring, 4) * a * c;
        if (sqrt_in_field(disc.to_field())) continue;
        return std::make_shared<const SurdContext>(a, b, c, 1);
    }
}

bool CorpusEntry::ok() const {
    if (!error.empty() || !period) return false;
    const PeriodResult& p = *period;
    bool base = round_trip && p.identities_ok && p.condition_c_all && p.report.monotone() && p.triples_ok && p.replay_verified;
    return base && (!growth || growth->ok());
}

bool CorpusSummary::ok() const {
    return errors == 0 && periodic == entries.size() && round_trips == entries.size() && identity_failures == 0 &&
           condition_c_failures == 0 && monotonicity_violations == 0 && growth_violations == 0 && succession_failures == 0;
}

CorpusEntry run_corpus_entry(const CorpusOptions& opts, std::size_t index) {
    CorpusEntry e;
    e.index = index;
    e.ctx = random_surd(opts.ring, opts.seed, index, opts.coeff_bound);
    const AlgorithmSpec alg = AlgorithmSpec::nearest_integer(opts.ring);
    try {
        e.period = detect_period(e.ctx, alg, opts.max_steps);
        e.rebuilt = surd_from_period(e.period->preperiod, e.period->cycle, opts.ring);
        // Equivalent contexts select the same number, whose expansion is unique.
        e.round_trip = contexts_equivalent(*e.ctx, *e.rebuilt);
        if (opts.ring == Ring::E) e.growth = growth_check(e.period->report);
    } catch (const BudgetExhausted& ex) {
        e.error = std::string("budget exhausted: ") + ex.what();
    } catch (const InvariantViolation& ex) {
        e.error = std::string("invariant violation: ") + ex.what();
    }
    if (!opts.out_dir.empty()) {
        char name[32];
        std::snprintf(name, sizeof name, "surd_%04zu.json", index);
        write_file_atomic(opts.out_dir + "/" + name, dump(entry_json(e)));
    }
    return e;
}

CorpusSummary run_corpus(const CorpusOptions& opts) {
    CorpusSummary sum;
    sum.entries.resize(opts.count);
    unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, opts.count)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < opts.count;) sum.entries[i] = run_corpus_entry(opts, i);
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    for (const auto& e : sum.entries) {
        if (!e.error.empty()) ++sum.errors;
        if (!e.period) continue;
        const PeriodResult& p = *e.period;
        ++sum.periodic;
        if (e.round_trip) ++sum.round_trips;
        if (!p.identities_ok || !p.triples_ok) ++sum.identity_failures;
        if (!p.condition_c_all) ++sum.condition_c_failures;
        sum.monotonicity_violations += p.report.monotonicity_violations().size();
        sum.max_period = std::max(sum.max_period, p.k);
        sum.max_preperiod = std::max(sum.max_preperiod, p.m);
        if (e.growth) {
            sum.growth_violations += e.growth->theorem_violations + e.growth->telescoping_violations + e.growth->remark_failures;
            sum.succession_failures += e.growth->succession_failures;
            sum.succession_applied += e.growth->succession_applied;
        }
    }
    if (!opts.out_dir.empty()) write_file_atomic(opts.out_dir + "/summary.json", dump(to_json(sum, opts)));
    return sum;
}

}  // namespace ccf
