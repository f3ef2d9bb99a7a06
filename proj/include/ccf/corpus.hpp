#pragma once

// Seeded corpora of random quadratic surds, expanded in parallel and audited:
// periodicity, reconstruction from the period, identities, Condition C,
// monotonicity and (Eisenstein nearest-integer) growth.

#include "ccf/growth.hpp"
#include "ccf/lagrange.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccf {

struct CorpusOptions {
    Ring ring = Ring::E;
    std::size_t count = 100;
    std::uint64_t seed = 1;
    long coeff_bound = 20;  ///< |x|, |y| <= bound for every coefficient coordinate
    std::size_t max_steps = 10000;
    unsigned threads = 0;   ///< 0: hardware concurrency
    std::string out_dir;    ///< per-surd JSON files when nonempty
};

/// Irreducible a z^2 + b z + c with the root (-b + sqrt(disc)) / 2a; the
/// i-th member of the corpus for a seed is independent of thread scheduling.
SurdContextPtr random_surd(Ring ring, std::uint64_t seed, std::size_t index, long coeff_bound);

struct CorpusEntry {
    std::size_t index = 0;
    SurdContextPtr ctx;
    std::optional<PeriodResult> period;
    SurdContextPtr rebuilt;
    bool round_trip = false;       ///< rebuilt context equivalent to the original
    std::optional<GrowthReport> growth;
    std::string error;             ///< budget or invariant failure

    bool ok() const;
};

struct CorpusSummary {
    std::vector<CorpusEntry> entries;
    std::size_t periodic = 0;
    std::size_t round_trips = 0;
    std::size_t identity_failures = 0;
    std::size_t condition_c_failures = 0;
    std::size_t monotonicity_violations = 0;
    std::size_t growth_violations = 0;
    std::size_t succession_failures = 0;
    std::size_t succession_applied = 0;
    std::size_t errors = 0;
    std::size_t max_period = 0;
    std::size_t max_preperiod = 0;

    bool ok() const;
};

CorpusEntry run_corpus_entry(const CorpusOptions& opts, std::size_t index);
CorpusSummary run_corpus(const CorpusOptions& opts);

}  // namespace ccf
