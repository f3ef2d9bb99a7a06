#include "ccf/io.hpp"

#include "ccf/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace ccf {

namespace {

std::string field_text(const Json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
    throw InputError(where + ": expected a string or integer");
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

Ring ring_name_field(const Json& j, const std::string& where) {
    try {
        return parse_ring(field_text(j, where));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

Rational rational_field(const Json& j, const std::string& where) {
    try {
        return parse_rational(field_text(j, where));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

QuadReal quad_field(const Json& j, const std::string& where) {
    try {
        return QuadReal::parse(field_text(j, where));
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
}

RingElement ring_field(const Json& j, Ring ring, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw InputError(where + ": expected [x, y]");
        return RingElement::parse(field_text(j[0], where) + "," + field_text(j[1], where), ring);
    }
    try {
        return RingElement::parse(field_text(j, where), ring);
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

bool bool_field(const Json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw InputError(where + "." + key + ": expected true or false");
    return obj.at(key).get<bool>();
}

Json tri(Tri t) { return std::string(tri_name(t)); }

template <class T, class F>
Json opt(const std::optional<T>& v, F&& f) {
    return v ? Json(f(*v)) : Json(nullptr);
}

Json ring_list(const std::vector<RingElement>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(coords(x));
    return a;
}

Json disk_json(const Disk& d) {
    return Json{{"center", {d.cx.to_string(), d.ceta.to_string()}}, {"radius_sq", d.radius_sq.to_string()}};
}

Json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return Json{{"point", coords(w->point)},
                {"point_re_eta", {to_string(w->point.re()), to_string(w->point.eta())}},
                {"a_n", coords(w->a_n)},
                {"a_next", coords(w->a_next)},
                {"description", w->description}};
}

}  // namespace

std::string coords(const RingElement& e) { return e.x().get_str() + "," + e.y().get_str(); }
std::string coords(const FieldElement& e) { return to_string(e.u()) + "," + to_string(e.v()); }

std::vector<RingElement> parse_quotients(std::string_view text, Ring ring) {
    std::vector<RingElement> out;
    std::string s(text);
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(';', start);
        if (end == std::string::npos) end = s.size();
        std::string item = s.substr(start, end - start);
        if (!item.empty()) out.push_back(RingElement::parse(item, ring));
        start = end + 1;
    }
    if (out.empty()) throw InputError("empty quotient list");
    return out;
}

SurdContextPtr parse_context(const Json& doc) {
    const std::string where = "context";
    Ring ring = ring_name_field(require(doc, "ring", where), where + ".ring");
    const Json& mp = require(doc, "minpoly", where);
    if (!mp.is_array() || mp.size() != 3) throw InputError(where + ".minpoly: expected three coefficients [a, b, c]");
    RingElement a = ring_field(mp[0], ring, where + ".minpoly[0]");
    RingElement b = ring_field(mp[1], ring, where + ".minpoly[1]");
    RingElement c = ring_field(mp[2], ring, where + ".minpoly[2]");
    if (doc.contains("bracket")) {
        const Json& br = doc.at("bracket");
        if (!br.is_array() || br.size() != 4) throw InputError(where + ".bracket: expected [re_lo, re_hi, im_lo, im_hi]");
        std::vector<Rational> v;
        for (std::size_t i = 0; i < 4; ++i) v.push_back(rational_field(br[i], where + ".bracket[" + std::to_string(i) + "]"));
        if (v[0] > v[1] || v[2] > v[3]) throw InputError(where + ".bracket: lower end exceeds upper end");
        return std::make_shared<const SurdContext>(a, b, c, ComplexBox{Interval(v[0], v[1]), Interval(v[2], v[3])});
    }
    std::string root = doc.contains("root") ? field_text(doc.at("root"), where + ".root") : "+im";
    return std::make_shared<const SurdContext>(a, b, c, parse_root_selector(root));
}

Json context_to_json(const SurdContext& ctx) {
    ComplexBox b = ctx.bracket();
    return Json{{"ring", std::string(ring_name(ctx.ring()))},
                {"minpoly", {coords(ctx.a()), coords(ctx.b()), coords(ctx.c())}},
                {"bracket", {to_string(b.re.lo), to_string(b.re.hi), to_string(b.im.lo), to_string(b.im.hi)}}};
}

PartitionSpec parse_partition(const Json& doc, std::optional<Ring> ring) {
    PartitionSpec spec;
    const Json* cells = &doc;
    if (doc.is_object()) {
        if (doc.contains("ring")) {
            Ring r = ring_name_field(doc.at("ring"), "partition.ring");
            if (ring && *ring != r)
                throw InputError("partition.ring: file is for " + std::string(ring_name(r)) + ", expected " + std::string(ring_name(*ring)));
            ring = r;
        }
        cells = &require(doc, "cells", "partition");
        if (doc.contains("radius")) spec.radius = quad_field(doc.at("radius"), "partition.radius");
        if (doc.contains("j_radius")) spec.j_radius = quad_field(doc.at("j_radius"), "partition.j_radius");
    }
    if (!ring) throw InputError("partition: ring not given");
    spec.ring = *ring;
    if (!cells->is_array() || cells->empty()) throw InputError("partition.cells: expected a nonempty list");
    for (std::size_t i = 0; i < cells->size(); ++i) {
        const std::string where = "partition.cells[" + std::to_string(i) + "]";
        const Json& c = (*cells)[i];
        PartitionCell cell;
        cell.vertex = ring_field(require(c, "vertex", where), spec.ring, where + ".vertex");
        const Json& cons = c.contains("constraints") ? c.at("constraints") : Json::array();
        if (!cons.is_array()) throw InputError(where + ".constraints: expected a list");
        for (std::size_t k = 0; k < cons.size(); ++k) {
            const std::string w = where + ".constraints[" + std::to_string(k) + "]";
            const Json& q = cons[k];
            std::string type = field_text(require(q, "type", w), w + ".type");
            if (type == "halfplane") {
                HalfPlane h;
                h.re = rational_field(require(q, "re", w), w + ".re");
                h.eta = rational_field(require(q, "eta", w), w + ".eta");
                h.bound = rational_field(require(q, "le", w), w + ".le");
                h.strict = bool_field(q, "strict", false, w);
                if (h.re == 0 && h.eta == 0) throw InputError(w + ": halfplane with zero normal");
                cell.halfplanes.push_back(h);
            } else if (type == "disk") {
                DiskConstraint d;
                const Json& ctr = require(q, "center", w);
                if (!ctr.is_array() || ctr.size() != 2) throw InputError(w + ".center: expected [re, eta]");
                d.center = FieldElement::from_coords(spec.ring, rational_field(ctr[0], w + ".center[0]"),
                                                     rational_field(ctr[1], w + ".center[1]"));
                d.radius_sq = rational_field(require(q, "radius_sq", w), w + ".radius_sq");
                if (d.radius_sq <= 0) throw InputError(w + ".radius_sq: must be positive");
                d.inside = bool_field(q, "inside", true, w);
                d.strict = bool_field(q, "strict", false, w);
                cell.disks.push_back(d);
            } else {
                throw InputError(w + ".type: unverifiable shape '" + type + "' (expected halfplane or disk)");
            }
        }
        spec.cells.push_back(std::move(cell));
    }
    return spec;
}

Json partition_to_json(const PartitionSpec& spec) {
    Json cells = Json::array();
    for (const auto& c : spec.cells) {
        Json cons = Json::array();
        for (const auto& h : c.halfplanes)
            cons.push_back(Json{{"type", "halfplane"}, {"re", to_string(h.re)}, {"eta", to_string(h.eta)},
                                {"le", to_string(h.bound)}, {"strict", h.strict}});
        for (const auto& d : c.disks)
            cons.push_back(Json{{"type", "disk"},
                                {"center", {to_string(d.center.re()), to_string(d.center.eta())}},
                                {"radius_sq", to_string(d.radius_sq)},
                                {"inside", d.inside},
                                {"strict", d.strict}});
        cells.push_back(Json{{"vertex", coords(c.vertex)}, {"constraints", cons}});
    }
    Json doc{{"ring", std::string(ring_name(spec.ring))}, {"cells", cells}};
    if (spec.radius) doc["radius"] = spec.radius->to_string();
    if (spec.j_radius) doc["j_radius"] = spec.j_radius->to_string();
    return doc;
}

Json to_json(const ExpansionStep& s) {
    Json j{{"n", s.n},
           {"a", coords(s.a)},
           {"p", coords(s.qpair.p_cur)},
           {"q", coords(s.qpair.q_cur)},
           {"q_norm", s.q_norm.get_str()},
           {"tie", s.tie},
           {"condition_c", tri(s.condition_c)},
           {"determinant_ok", s.determinant_ok},
           {"residual_ok", tri(s.residual_ok)},
           {"mobius_ok", tri(s.mobius_ok)},
           {"error_bound", opt(s.error_bound, [](const QuadReal& q) { return q.to_string(); })},
           {"error_certified", tri(s.error_certified)},
           {"sharp_bound", opt(s.sharp_bound, [](const Rational& q) { return to_string(q); })}};
    if (s.z) j["z"] = s.z->to_string();
    if (s.z_box) {
        j["z_box"] = s.z_box->to_string();
        j["bits"] = s.bits;
    }
    return j;
}

Json to_json(const ExpansionReport& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) steps.push_back(to_json(s));
    Json viol = Json::array();
    for (auto n : r.monotonicity_violations()) viol.push_back(n);
    return Json{{"ring", std::string(ring_name(r.ring))},
                {"mode", r.mode},
                {"algorithm", r.algorithm},
                {"tie_rule", r.tie_rule},
                {"radius", r.radius.to_string()},
                {"termination", r.termination},
                {"max_bits", r.max_bits},
                {"restarts", r.restarts},
                {"quotients", ring_list(r.quotients())},
                {"summary",
                 {{"steps", r.steps.size()},
                  {"condition_c_all", r.condition_c_all()},
                  {"monotone", r.monotone()},
                  {"monotonicity_violations", viol},
                  {"monotonicity_consistent", r.monotonicity_consistent()},
                  {"identities_ok", r.identities_ok()}}},
                {"steps", steps}};
}

Json to_json(const PeriodResult& p) {
    return Json{{"m", p.m},
                {"k", p.k},
                {"preperiod", ring_list(p.preperiod)},
                {"cycle", ring_list(p.cycle)},
                {"triples_bound", opt(p.triples_bound, [](const Rational& q) { return to_string(q); })},
                {"max_A_norm", p.max_A_norm.get_str()},
                {"fingerprint", p.fingerprint},
                {"replay_verified", p.replay_verified},
                {"condition_c_all", p.condition_c_all},
                {"hypothesis_verified", p.hypothesis_verified},
                {"identities_ok", p.identities_ok},
                {"triples_ok", p.triples_ok},
                {"distinct_states", p.distinct_states},
                {"steps_used", p.steps_used}};
}

Json to_json(const GrowthReport& g) {
    Json rows = Json::array();
    for (const auto& r : g.rows)
        rows.push_back(Json{{"n", r.n},
                            {"a_n", coords(r.a_n)},
                            {"a_next", coords(r.a_next)},
                            {"ratio_sq", to_string(r.ratio_sq)},
                            {"theorem_ok", r.theorem_ok},
                            {"telescoping_ok", r.telescoping_ok},
                            {"remark_applicable", r.remark_applicable},
                            {"remark63_bound_sq", opt(r.remark_bound_sq, [](const QuadReal& q) { return q.to_string(); })},
                            {"remark_ok", tri(r.remark_ok)},
                            {"remark_exceeds_three_halves", tri(r.remark_exceeds)},
                            {"succession", r.succession.to_string()}});
    return Json{{"min_ratio_sq", opt(g.min_ratio_sq, [](const Rational& q) { return to_string(q); })},
                {"theorem_violations", g.theorem_violations},
                {"telescoping_violations", g.telescoping_violations},
                {"succession_applied", g.succession_applied},
                {"succession_failures", g.succession_failures},
                {"remark_failures", g.remark_failures},
                {"ok", g.ok()},
                {"rows", rows}};
}

Json to_json(const Thm51Result& r) {
    Json clauses = Json::array();
    for (const auto& c : r.clauses)
        clauses.push_back(Json{{"k", c.k},
                               {"t", coords(c.t)},
                               {"shifted", coords(c.shifted)},
                               {"verdict", std::string(verdict_name(c.verdict))},
                               {"method", c.method},
                               {"inverted_disk", disk_json(c.inverted)},
                               {"cell_disk", disk_json(c.cell)},
                               {"witness", witness_json(c.witness)}});
    return Json{{"verdict", std::string(verdict_name(r.overall()))},
                {"radius_sq", r.radius_sq.to_string()},
                {"j_radius_sq", r.j_radius_sq.to_string()},
                {"a", std::string(verdict_name(r.a))},
                {"b", std::string(verdict_name(r.b))},
                {"b_witness", witness_json(r.b_witness)},
                {"c", std::string(verdict_name(r.c))},
                {"clauses", clauses}};
}

Json to_json(const Cor52Result& r) {
    return Json{{"verdict", std::string(verdict_name(r.overall()))},
                {"radius_sq", r.radius_sq.to_string()},
                {"j_radius_sq", r.j_radius_sq.to_string()},
                {"bound_a_sq", r.bound_a_sq.to_string()},
                {"lambda", r.lambda.to_string()},
                {"a", std::string(verdict_name(r.a))},
                {"b", std::string(verdict_name(r.b))}};
}

Json to_json(const GrowthPolynomialCheck& r) {
    return Json{{"ok", r.all()},
                {"factorization", r.factorization},
                {"derivation", r.derivation},
                {"root_lambda", r.root_lambda},
                {"root_mu", r.root_mu},
                {"sign_low", r.sign_low},
                {"sign_high", r.sign_high}};
}

Json to_json(const SweepResult& r) {
    return Json{{"ok", r.ok()},
                {"points", r.points},
                {"agreements", r.agreements},
                {"last_pass", to_string(r.last_pass)},
                {"threshold_sq", r.threshold_sq.to_string()},
                {"threshold_matches", r.threshold_matches}};
}

Json to_json(const CorpusSummary& s, const CorpusOptions& opts) {
    Json entries = Json::array();
    for (const auto& e : s.entries) {
        Json row{{"index", e.index},
                 {"minpoly", {coords(e.ctx->a()), coords(e.ctx->b()), coords(e.ctx->c())}},
                 {"ok", e.ok()},
                 {"round_trip", e.round_trip}};
        if (e.period) {
            row["m"] = e.period->m;
            row["k"] = e.period->k;
        }
        if (e.growth) row["min_ratio_sq"] = opt(e.growth->min_ratio_sq, [](const Rational& q) { return to_string(q); });
        if (!e.error.empty()) row["error"] = e.error;
        entries.push_back(row);
    }
    return Json{{"schema", kReportSchema},
                {"command", "corpus"},
                {"ring", std::string(ring_name(opts.ring))},
                {"count", opts.count},
                {"seed", opts.seed},
                {"coeff_bound", opts.coeff_bound},
                {"max_steps", opts.max_steps},
                {"ok", s.ok()},
                {"periodic", s.periodic},
                {"round_trips", s.round_trips},
                {"identity_failures", s.identity_failures},
                {"condition_c_failures", s.condition_c_failures},
                {"monotonicity_violations", s.monotonicity_violations},
                {"growth_violations", s.growth_violations},
                {"succession_applied", s.succession_applied},
                {"succession_failures", s.succession_failures},
                {"errors", s.errors},
                {"max_preperiod", s.max_preperiod},
                {"max_period", s.max_period},
                {"entries", entries}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    std::ostringstream tag;
    tag << std::this_thread::get_id();
    fs::path tmp = target;
    tmp += ".tmp-" + tag.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

}  // namespace ccf
