// Command-line front end: expand, period, verify-algorithm, growth-report, corpus.
// Exit codes: 0 success, 1 input error, 2 verification failure, 3 budget exhausted.

#include "ccf/corpus.hpp"
#include "ccf/error.hpp"
#include "ccf/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace ccf;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kVerifyFail = 2;
constexpr int kBudget = 3;

struct AlgorithmOptions {
    std::string ring = "E";
    std::string alg = "nearest";
    std::string partition;
    std::string tie = "lexicographic-min";

    void add(CLI::App* cmd) {
        cmd->add_option("--ring", ring, "Zi, Zi2, Zi3, E, E7 or E11")->capture_default_str();
        cmd->add_option("--alg", alg, "nearest or partition")->capture_default_str();
        cmd->add_option("--partition", partition, "partition JSON file (with --alg partition)");
        cmd->add_option("--tie", tie, "tie rule for the nearest-integer map")->capture_default_str();
    }

    Ring parsed_ring() const { return parse_ring(ring); }

    AlgorithmSpec build() const {
        Ring r = parsed_ring();
        if (tie != "lexicographic-min") throw InputError("--tie: unknown tie rule '" + tie + "'");
        if (alg == "nearest") {
            if (!partition.empty()) throw InputError("--partition requires --alg partition");
            return AlgorithmSpec::nearest_integer(r);
        }
        if (alg == "partition") {
            if (partition.empty()) throw InputError("--alg partition requires --partition FILE");
            return AlgorithmSpec::partition(parse_partition(read_json_file(partition), r));
        }
        throw InputError("--alg: unknown algorithm '" + alg + "' (expected nearest or partition)");
    }

    Json to_json() const {
        Json j{{"ring", ring}, {"alg", alg}, {"tie", tie}};
        if (!partition.empty()) j["partition"] = partition;
        return j;
    }
};

struct InputOptions {
    std::string value;
    std::string minpoly;
    std::string root = "+im";
    std::string bracket;
    std::string context;
    std::string quotients;

    void add(CLI::App* cmd, bool with_value) {
        if (with_value) cmd->add_option("--value", value, "complex number such as 1.23+0.77i (numeric mode)");
        cmd->add_option("--minpoly", minpoly, "a,b,c with integer entries, or x,y;x,y;x,y in ring coordinates");
        cmd->add_option("--root", root, "root selector: +im, -im, +re, -re, +abs, -abs")->capture_default_str();
        cmd->add_option("--bracket", bracket, "re_lo,re_hi,im_lo,im_hi isolating the root");
        cmd->add_option("--context", context, "context JSON file");
        if (with_value) cmd->add_option("--quotients", quotients, "forced quotient stream x,y;x,y;...");
    }

    bool has_context() const { return !minpoly.empty() || !context.empty(); }

    SurdContextPtr build_context(Ring ring) const {
        if (!context.empty()) {
            if (!minpoly.empty()) throw InputError("give either --minpoly or --context, not both");
            SurdContextPtr ctx = parse_context(read_json_file(context));
            if (ctx->ring() != ring)
                throw InputError("--context: file is for ring " + std::string(ring_name(ctx->ring())) + ", --ring is " +
                                 std::string(ring_name(ring)));
            return ctx;
        }
        std::vector<RingElement> coeffs;
        if (minpoly.find(';') != std::string::npos) {
            coeffs = parse_quotients(minpoly, ring);
        } else {
            std::string s = minpoly;
            std::size_t start = 0;
            while (start <= s.size()) {
                std::size_t end = std::min(s.find(',', start), s.size());
                coeffs.push_back(RingElement::parse(s.substr(start, end - start), ring));
                start = end + 1;
            }
        }
        if (coeffs.size() != 3) throw InputError("--minpoly: expected three coefficients a, b, c");
        if (!bracket.empty()) {
            std::vector<Rational> v;
            std::size_t start = 0;
            while (start <= bracket.size()) {
                std::size_t end = std::min(bracket.find(',', start), bracket.size());
                v.push_back(parse_rational(bracket.substr(start, end - start)));
                start = end + 1;
            }
            if (v.size() != 4 || v[0] > v[1] || v[2] > v[3])
                throw InputError("--bracket: expected re_lo,re_hi,im_lo,im_hi with lo <= hi");
            return std::make_shared<const SurdContext>(coeffs[0], coeffs[1], coeffs[2],
                                                       ComplexBox{Interval(v[0], v[1]), Interval(v[2], v[3])});
        }
        return std::make_shared<const SurdContext>(coeffs[0], coeffs[1], coeffs[2], parse_root_selector(root));
    }

    Json to_json() const {
        Json j = Json::object();
        if (!value.empty()) j["value"] = value;
        if (!minpoly.empty()) j["minpoly"] = minpoly;
        if (!context.empty()) j["context"] = context;
        if (!bracket.empty()) j["bracket"] = bracket;
        else if (has_context()) j["root"] = root;
        if (!quotients.empty()) j["quotients"] = quotients;
        return j;
    }
};

struct Output {
    std::string path;
    void add(CLI::App* cmd) { cmd->add_option("--out", path, "output file (default: stdout)"); }
    void write(const std::string& text) const {
        if (path.empty())
            std::cout << text;
        else
            write_file_atomic(path, text);
    }
};

unsigned default_precision_cap() {
    if (const char* env = std::getenv("CCF_PRECISION_CAP")) {
        try {
            long v = std::stol(env);
            if (v >= 32) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw InputError("CCF_PRECISION_CAP must be an integer >= 32");
    }
    return 4096;
}

struct ExpandOptions {
    std::size_t steps = 10000;
    std::string error_target;
    unsigned precision = 256;
    unsigned precision_cap = 0;
    bool detect_period = false;

    void add(CLI::App* cmd, std::size_t default_steps) {
        steps = default_steps;
        cmd->add_option("--steps", steps, "maximum number of partial quotients")->capture_default_str();
        cmd->add_option("--error-target", error_target, "stop once the certified error bound is below this rational");
        cmd->add_option("--precision", precision, "initial working precision in bits (numeric mode)")->capture_default_str();
        cmd->add_option("--precision-cap", precision_cap, "precision cap in bits (default $CCF_PRECISION_CAP or 4096)");
    }

    ExpansionOptions build() const {
        ExpansionOptions o;
        o.max_steps = steps;
        if (!error_target.empty()) {
            o.error_target = parse_rational(error_target);
            if (*o.error_target <= 0) throw InputError("--error-target must be positive");
        }
        if (precision < 32) throw InputError("--precision must be at least 32");
        o.precision = precision;
        o.precision_cap = precision_cap ? precision_cap : default_precision_cap();
        if (o.precision_cap < o.precision) throw InputError("--precision-cap is below --precision");
        return o;
    }
};

struct Expansion {
    ExpansionReport report;
    std::optional<PeriodResult> period;
};

Expansion run_expansion(const AlgorithmOptions& ao, const InputOptions& in, const ExpandOptions& eo) {
    Ring ring = ao.parsed_ring();
    ExpansionOptions opts = eo.build();
    int sources = !in.value.empty() + in.has_context();
    if (sources > 1) throw InputError("give one of --value, --minpoly or --context");
    if (!in.quotients.empty()) {
        if (!in.value.empty()) throw InputError("--quotients combines with --minpoly or --context, not --value");
        auto qs = parse_quotients(in.quotients, ring);
        return {expand_quotients(qs, in.has_context() ? in.build_context(ring) : nullptr, opts), std::nullopt};
    }
    if (sources == 0) throw InputError("no input: give --value, --minpoly, --context or --quotients");
    AlgorithmSpec alg = ao.build();
    if (!in.value.empty()) return {expand_numeric(NumericSource::parse(in.value), alg, opts), std::nullopt};
    SurdContextPtr ctx = in.build_context(ring);
    if (eo.detect_period) {
        PeriodResult p = detect_period(ctx, alg, opts.max_steps);
        ExpansionReport rep = p.report;
        return {std::move(rep), std::move(p)};
    }
    return {expand_exact(ctx, alg, opts), std::nullopt};
}

Json header(const std::string& command, const AlgorithmOptions& ao) {
    return Json{{"schema", kReportSchema}, {"command", command}, {"algorithm_options", ao.to_json()}};
}

int cmd_expand(const AlgorithmOptions& ao, const InputOptions& in, const ExpandOptions& eo, const Output& out) {
    Expansion ex = run_expansion(ao, in, eo);
    Json doc = header("expand", ao);
    doc["input"] = in.to_json();
    Json body = to_json(ex.report);
    for (auto& [k, v] : body.items()) doc[k] = v;
    if (ex.report.ring == Ring::E && ex.report.algorithm == "nearest") {
        Json g = to_json(growth_check(ex.report));
        g.erase("rows");
        doc["growth"] = g;
    } else {
        doc["growth"] = nullptr;
    }
    doc["period"] = ex.period ? to_json(*ex.period) : Json(nullptr);
    out.write(dump(doc));
    bool certified = std::none_of(ex.report.steps.begin(), ex.report.steps.end(),
                                  [](const ExpansionStep& s) { return s.error_certified == Tri::No; });
    return ex.report.identities_ok() && ex.report.monotonicity_consistent() && certified ? kOk : kVerifyFail;
}

int cmd_period(const AlgorithmOptions& ao, const InputOptions& in, std::size_t max_steps, const std::string& preperiod,
               const std::string& cycle, const Output& out) {
    Ring ring = ao.parsed_ring();
    Json doc = header("period", ao);
    doc["input"] = in.to_json();
    if (!cycle.empty()) {
        if (in.has_context()) throw InputError("--cycle reconstructs a surd; do not combine with --minpoly or --context");
        auto cyc = parse_quotients(cycle, ring);
        std::vector<RingElement> pre = preperiod.empty() ? std::vector<RingElement>{} : parse_quotients(preperiod, ring);
        doc["input"]["preperiod"] = preperiod;
        doc["input"]["cycle"] = cycle;
        SurdContextPtr ctx = surd_from_period(pre, cyc, ring);
        AlgorithmSpec alg = ao.build();
        QuadraticTriple poly = period_polynomial(pre, cyc);
        doc["mode"] = "reconstruct";
        doc["polynomial"] = {coords(poly.A), coords(poly.B), coords(poly.C)};
        doc["context"] = context_to_json(*ctx);
        std::vector<RingElement> stream = pre;
        for (int rep = 0; rep < 2; ++rep) stream.insert(stream.end(), cyc.begin(), cyc.end());
        ExpansionOptions o;
        o.max_steps = stream.size();
        o.certify_error = false;
        std::vector<RingElement> got = expand_exact(ctx, alg, o).quotients();
        doc["reproduces_input"] = got == stream;
        PeriodResult p = detect_period(ctx, alg, max_steps);
        Json body = to_json(p);
        for (auto& [k, v] : body.items()) doc[k] = v;
        out.write(dump(doc));
        return p.identities_ok && p.triples_ok ? kOk : kVerifyFail;
    }
    if (!in.has_context()) throw InputError("period needs --minpoly or --context (or --cycle to reconstruct)");
    SurdContextPtr ctx = in.build_context(ring);
    AlgorithmSpec alg = ao.build();
    PeriodResult p = detect_period(ctx, alg, max_steps);
    doc["mode"] = "detect";
    doc["context"] = context_to_json(*ctx);
    Json body = to_json(p);
    for (auto& [k, v] : body.items()) doc[k] = v;
    out.write(dump(doc));
    return p.identities_ok && p.triples_ok && p.replay_verified ? kOk : kVerifyFail;
}

int cmd_verify(const AlgorithmOptions& ao, unsigned sweep_steps, const Output& out) {
    AlgorithmSpec alg = ao.build();
    if (alg.ring() != Ring::E) throw InputError("--ring: verify-algorithm supports the Eisenstein ring E only");
    Thm51Result thm = verify_thm51(alg);
    Cor52Result cor = verify_cor52(alg);
    bool verified = thm.overall() == Verdict::Pass || cor.overall() == Verdict::Pass;
    bool refuted = thm.overall() == Verdict::Fail;
    std::string status = verified ? "PASS" : (refuted ? "FAIL" : "UNDECIDED");
    Json doc = header("verify-algorithm", ao);
    doc["status"] = status;
    doc["radius_sq"] = alg.radius_sq().to_string();
    if (alg.kind() == AlgorithmSpec::Kind::Partition)
        doc["partition_geometry"] = {{"radius_sq", to_string(alg.geometry().radius_sq)},
                                     {"validated", alg.geometry().validated},
                                     {"note", alg.geometry().note}};
    doc["thm51"] = to_json(thm);
    doc["cor52"] = to_json(cor);
    doc["growth_polynomial"] = to_json(check_growth_polynomial());
    doc["sweep"] = to_json(sweep_j_clause(sweep_steps));
    out.write(dump(doc));
    std::cerr << status << ": conditions (a) " << verdict_name(thm.a) << ", (b) " << verdict_name(thm.b) << ", (c) "
              << verdict_name(thm.c) << "; cell-disk criteria " << verdict_name(cor.overall()) << "\n";
    return verified ? kOk : kVerifyFail;
}

int cmd_growth(const AlgorithmOptions& ao, const InputOptions& in, const ExpandOptions& eo, bool allow_forced,
               const std::string& format, const Output& out) {
    if (format != "csv" && format != "json") throw InputError("--format: expected csv or json");
    Expansion ex = run_expansion(ao, in, eo);
    GrowthReport g = growth_check(ex.report, allow_forced);
    if (format == "csv") {
        out.write(growth_csv(g));
    } else {
        Json doc = header("growth-report", ao);
        doc["input"] = in.to_json();
        doc["quotients"] = to_json(ex.report)["quotients"];
        doc["growth"] = to_json(g);
        out.write(dump(doc));
    }
    return g.ok() ? kOk : kVerifyFail;
}

int cmd_corpus(const CorpusOptions& opts, const Output& out) {
    CorpusSummary s = run_corpus(opts);
    out.write(dump(to_json(s, opts)));
    std::cerr << "corpus: " << s.periodic << "/" << s.entries.size() << " periodic, " << s.round_trips << " round trips, "
              << s.errors << " errors\n";
    if (s.ok()) return kOk;
    bool only_budget = s.errors > 0 && std::all_of(s.entries.begin(), s.entries.end(), [](const CorpusEntry& e) {
                           return e.error.empty() ? e.ok() : e.error.rfind("budget", 0) == 0;
                       });
    return only_budget ? kBudget : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and certified complex continued fractions over discrete subrings of C"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ccf 1.0.0");

    AlgorithmOptions algo;
    InputOptions input;
    ExpandOptions expand;
    Output output;

    auto* c_expand = app.add_subcommand("expand", "expand a number and report convergents, bounds and verdicts");
    algo.add(c_expand);
    input.add(c_expand, true);
    expand.add(c_expand, 10000);
    c_expand->add_flag("--detect-period", expand.detect_period, "exact mode: stop when the expansion becomes periodic");
    output.add(c_expand);

    auto* c_period = app.add_subcommand("period", "detect the period of a quadratic surd, or rebuild a surd from a period");
    AlgorithmOptions algo_p;
    InputOptions input_p;
    Output output_p;
    std::size_t max_steps = 10000;
    std::string preperiod, cycle;
    algo_p.add(c_period);
    input_p.add(c_period, false);
    c_period->add_option("--max-steps", max_steps, "step budget for period detection")->capture_default_str();
    c_period->add_option("--preperiod", preperiod, "preperiod quotients x,y;x,y;... (with --cycle)");
    c_period->add_option("--cycle", cycle, "cycle quotients x,y;x,y;...: rebuild the surd");
    output_p.add(c_period);

    auto* c_verify = app.add_subcommand("verify-algorithm", "check the monotonicity conditions for an Eisenstein algorithm");
    AlgorithmOptions algo_v;
    Output output_v;
    unsigned sweep_steps = 1000;
    algo_v.add(c_verify);
    c_verify->add_option("--sweep-steps", sweep_steps, "granularity of the radius sweep")->capture_default_str()->check(CLI::Range(2U, 1000000U));
    output_v.add(c_verify);

    auto* c_growth = app.add_subcommand("growth-report", "audit |q_{n+1}/q_{n-1}| and the succession rules");
    AlgorithmOptions algo_g;
    InputOptions input_g;
    ExpandOptions expand_g;
    Output output_g;
    bool allow_forced = false;
    std::string format = "csv";
    algo_g.add(c_growth);
    input_g.add(c_growth, true);
    expand_g.add(c_growth, 200);
    c_growth->add_flag("--detect-period", expand_g.detect_period, "exact mode: stop when the expansion becomes periodic");
    c_growth->add_flag("--allow-forced", allow_forced, "audit a forced quotient stream or a non-nearest algorithm");
    c_growth->add_option("--format", format, "csv or json")->capture_default_str();
    output_g.add(c_growth);

    auto* c_corpus = app.add_subcommand("corpus", "expand a seeded corpus of random quadratic surds in parallel");
    CorpusOptions corpus;
    std::string corpus_ring = "E";
    Output output_c;
    c_corpus->add_option("--ring", corpus_ring, "ring of the coefficients")->capture_default_str();
    c_corpus->add_option("--count", corpus.count, "number of surds")->capture_default_str();
    c_corpus->add_option("--seed", corpus.seed, "random seed")->capture_default_str();
    c_corpus->add_option("--bound", corpus.coeff_bound, "coefficient coordinate bound")->capture_default_str()->check(CLI::Range(1L, 1000000L));
    c_corpus->add_option("--max-steps", corpus.max_steps, "step budget per surd")->capture_default_str();
    c_corpus->add_option("--threads", corpus.threads, "worker threads (0: all cores)")->capture_default_str();
    c_corpus->add_option("--out-dir", corpus.out_dir, "directory for per-surd JSON files");
    output_c.add(c_corpus);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (c_expand->parsed()) return cmd_expand(algo, input, expand, output);
        if (c_period->parsed()) return cmd_period(algo_p, input_p, max_steps, preperiod, cycle, output_p);
        if (c_verify->parsed()) return cmd_verify(algo_v, sweep_steps, output_v);
        if (c_growth->parsed()) return cmd_growth(algo_g, input_g, expand_g, allow_forced, format, output_g);
        if (c_corpus->parsed()) {
            corpus.ring = parse_ring(corpus_ring);
            return cmd_corpus(corpus, output_c);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const InvariantViolation& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
