// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "ccf/corpus.hpp"
#include "ccf/error.hpp"
#include "ccf/expansion.hpp"
#include "ccf/io.hpp"
#include "ccf/lagrange.hpp"
#include "ccf/verify.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

using namespace ccf;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
    if (!ok) ++failures;
}

template <class F>
void guarded(int id, F&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string count(std::size_t n) { return std::to_string(n); }

}  // namespace

int main() {
    CorpusOptions opts;
    opts.ring = Ring::E;
    opts.count = 100;
    opts.seed = 1;
    opts.coeff_bound = 20;
    opts.max_steps = 10000;
    auto start = std::chrono::steady_clock::now();
    CorpusSummary corpus = run_corpus(opts);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t steps = 0;
    for (const auto& e : corpus.entries)
        if (e.period) steps += e.period->report.steps.size();

    guarded(1, [&] {
        std::ostringstream d;
        d << corpus.periodic << "/100 periodic within 10^4 steps, " << corpus.round_trips << "/100 reconstructed, "
          << corpus.errors << " errors, max period " << corpus.max_period << ", " << seconds << " s";
        report(1, corpus.periodic == 100 && corpus.round_trips == 100 && corpus.errors == 0 && seconds < 60, d.str());
    });

    guarded(2, [] {
        Ring r = Ring::Zi;
        auto ctx = std::make_shared<SurdContext>(RingElement(r, 1), RingElement(r, 0), RingElement(r, 2), RootSelector::PlusIm);
        PeriodResult p = detect_period(ctx, AlgorithmSpec::nearest_integer(r));
        bool ok = p.m == 1 && p.k == 2 && p.preperiod == std::vector<RingElement>{{r, 0, 1}} &&
                  p.cycle == std::vector<RingElement>{{r, 0, -2}, {r, 0, 2}} && p.replay_verified;
        std::ostringstream d;
        d << "i sqrt 2 expands as [" << coords(p.preperiod.at(0)) << "; " << coords(p.cycle.at(0)) << " "
          << coords(p.cycle.at(1)) << "], preperiod " << p.m << ", period " << p.k;
        report(2, ok, d.str());
    });

    guarded(3, [&] {
        report(3, corpus.identity_failures == 0 && steps > 0,
               count(corpus.identity_failures) + " identity failures over " + count(steps) + " exact steps");
    });

    guarded(4, [&] {
        report(4, corpus.condition_c_failures == 0 && corpus.monotonicity_violations == 0,
               count(corpus.condition_c_failures) + " Condition C failures, " + count(corpus.monotonicity_violations) +
                   " monotonicity violations");
    });

    guarded(5, [&] {
        report(5, corpus.growth_violations == 0 && corpus.succession_failures == 0 && corpus.succession_applied > 0,
               count(corpus.growth_violations) + " growth violations, " + count(corpus.succession_failures) +
                   " succession failures in " + count(corpus.succession_applied) + " applicable steps");
    });

    guarded(6, [] {
        auto alg = AlgorithmSpec::nearest_integer(Ring::E);
        ExpansionOptions o;
        o.precision = 256;
        const QuadReal c(Rational(1, 2), Rational(1, 2), 3);
        std::size_t bounded = 0, certified = 0, wrong_constant = 0;
        auto audit = [&](const ExpansionReport& rep) {
            for (const auto& st : rep.steps) {
                if (!st.error_bound) continue;
                ++bounded;
                if (st.error_certified == Tri::Yes) ++certified;
                if (!(*st.error_bound == c / QuadReal(Rational(st.q_norm)))) ++wrong_constant;
            }
        };
        o.max_steps = 40;
        audit(expand_numeric(NumericSource::parse("1.23+0.77i"), alg, o));
        o.max_steps = 200;
        for (std::size_t i = 0; i < 10; ++i) audit(expand_numeric(NumericSource::surd(random_surd(Ring::E, 1, i, 20)), alg, o));
        report(6, bounded > 0 && certified == bounded && wrong_constant == 0,
               count(certified) + "/" + count(bounded) + " bounds ((sqrt 3 + 1)/2)|q_n|^-2 certified by containment");
    });

    guarded(7, [] {
        Cor52Result c = verify_cor52(AlgorithmSpec::nearest_integer(Ring::E));
        bool order = compare(QuadReal(Rational(1, 3)), c.lambda) < 0;
        GrowthPolynomialCheck g = check_growth_polynomial();
        SweepResult s = sweep_j_clause(1000);
        std::ostringstream d;
        d << "corollary " << verdict_name(c.overall()) << ", 1/3 < lambda " << (order ? "yes" : "no") << ", P(s) identities "
          << (g.all() ? "hold" : "fail") << ", sweep " << s.agreements << "/" << s.points << " agree, last pass r = "
          << to_string(s.last_pass);
        report(7, c.overall() == Verdict::Pass && order && g.all() && s.ok(), d.str());
    });

    guarded(8, [] {
        AlgorithmSpec alg = AlgorithmSpec::partition(parse_partition(read_json_file(CCF_DATA_DIR "/partition_r099.json")));
        Thm51Result t = verify_thm51(alg);
        const ClauseResult* hit = nullptr;
        for (const auto& cl : t.clauses)
            if (cl.verdict == Verdict::Fail && cl.witness && !hit) hit = &cl;
        std::string cmd = std::string(CCF_CLI_PATH) + " verify-algorithm --ring E --alg partition --partition " +
                          CCF_DATA_DIR "/partition_r099.json > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        std::ostringstream d;
        d << "condition (c) " << verdict_name(t.c);
        if (hit)
            d << ", witness z = " << coords(hit->witness->point) << " with digits " << coords(hit->witness->a_n) << ", "
              << coords(hit->witness->a_next) << " (k=" << hit->k << ")";
        d << ", CLI exit " << code;
        report(8, t.c == Verdict::Fail && hit && code == 2, d.str());
    });

    return failures == 0 ? 0 : 1;
}
