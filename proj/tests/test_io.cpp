#include "ccf/error.hpp"
#include "ccf/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ccf;
using namespace ccf::testing;

namespace {

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("quotient lists") {
    auto q = parse_quotients("0,1;-2,0; 3,4@E", Ring::E);
    CHECK(q == std::vector<RingElement>{{Ring::E, 0, 1}, {Ring::E, -2, 0}, {Ring::E, 3, 4}});
    CHECK_THROWS_AS(parse_quotients("", Ring::E), InputError);
    CHECK_THROWS_AS(parse_quotients("1,2@Zi", Ring::E), InputError);
    CHECK(coords(RingElement(Ring::E, -3, 7)) == "-3,7");
    CHECK(coords(FieldElement(Ring::E, Rational(1, 2), -1)) == "1/2,-1");
}

TEST_CASE("context documents") {
    Json doc = Json::parse(R"({"ring": "Zi", "minpoly": ["1,0", "0,0", "2,0"], "root": "+im"})");
    auto ctx = parse_context(doc);
    CHECK(ctx->ring() == Ring::Zi);
    CHECK(ctx->c() == RingElement(Ring::Zi, 2));
    auto again = parse_context(context_to_json(*ctx));
    CHECK(contexts_equivalent(*ctx, *again));
    CHECK(again->bracket().re.lo == ctx->bracket().re.lo);

    CHECK(mentions(error_of([] { parse_context(Json::parse(R"({"ring": "Zi"})")); }), "context: missing field 'minpoly'"));
    CHECK(mentions(error_of([] { parse_context(Json::parse(R"({"ring": "Zi", "minpoly": ["1,0", "0,0"]})")); }),
                   "context.minpoly"));
    CHECK(mentions(error_of([] { parse_context(Json::parse(R"({"ring": "Zi", "minpoly": ["1,0", "a,0", "2,0"]})")); }),
                   "context.minpoly[1]"));
    CHECK(mentions(error_of([] {
                       parse_context(Json::parse(R"({"ring": "Zi", "minpoly": ["1,0", "0,0", "2,0"], "bracket": ["1", "0", "0", "1"]})"));
                   }),
                   "context.bracket"));
    CHECK(mentions(error_of([] { parse_context(Json::parse(R"({"ring": "Q", "minpoly": ["1,0", "0,0", "2,0"]})")); }),
                   "context.ring"));
}

TEST_CASE("partition documents") {
    Json doc = read_json_file(CCF_DATA_DIR "/partition_r099.json");
    PartitionSpec spec = parse_partition(doc);
    CHECK(spec.ring == Ring::E);
    CHECK(spec.cells.size() == 5);
    REQUIRE(spec.radius);
    CHECK(*spec.radius == QuadReal(Rational(99, 100)));
    PartitionSpec back = parse_partition(partition_to_json(spec));
    CHECK(back.cells.size() == spec.cells.size());
    for (std::size_t i = 0; i < spec.cells.size(); ++i) {
        CHECK(back.cells[i].vertex == spec.cells[i].vertex);
        REQUIRE(back.cells[i].halfplanes.size() == spec.cells[i].halfplanes.size());
        for (std::size_t k = 0; k < spec.cells[i].halfplanes.size(); ++k) {
            CHECK(back.cells[i].halfplanes[k].re == spec.cells[i].halfplanes[k].re);
            CHECK(back.cells[i].halfplanes[k].eta == spec.cells[i].halfplanes[k].eta);
            CHECK(back.cells[i].halfplanes[k].bound == spec.cells[i].halfplanes[k].bound);
        }
    }

    // a bare list needs the ring from elsewhere
    Json list = doc["cells"];
    CHECK(parse_partition(list, Ring::E).cells.size() == 5);
    CHECK_THROWS_AS(parse_partition(list), InputError);

    Json bad = doc;
    bad["cells"][0]["constraints"][1]["type"] = "ellipse";
    CHECK(mentions(error_of([&] { parse_partition(bad); }), "partition.cells[0].constraints[1].type: unverifiable shape"));
    bad = doc;
    bad["cells"][2]["constraints"][0]["le"] = "x";
    CHECK(mentions(error_of([&] { parse_partition(bad); }), "partition.cells[2].constraints[0]"));
    bad = doc;
    bad["cells"][1]["vertex"] = "2,0";
    CHECK_THROWS_AS(AlgorithmSpec::partition(parse_partition(bad)), InputError);
}

TEST_CASE("reports are deterministic") {
    auto ctx = parse_context(Json::parse(R"({"ring": "E", "minpoly": ["1,0", "-2,0", "-1,0"], "root": "+abs"})"));
    ExpansionOptions opts;
    opts.max_steps = 15;
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    std::string a = dump(to_json(expand_exact(ctx, alg, opts)));
    std::string b = dump(to_json(expand_exact(ctx, alg, opts)));
    CHECK(a == b);
    CHECK(a.back() == '\n');
    Json doc = Json::parse(a);
    CHECK(doc["steps"].size() == 15);
    CHECK(doc["steps"][0]["a"] == "2,0");
}

TEST_CASE("atomic file writes") {
    auto dir = std::filesystem::temp_directory_path() / "ccf_io_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "out.json").string();
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), InputError);
}
