#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <unistd.h>

#include "support.hpp"
#include "twocy/cli.hpp"
#include "twocy/nccalc.hpp"

using namespace twocy;
using io::Json;

namespace {

Json potential_doc() {
    io::PotentialDoc p{testing::surface_algebra(1), potential_from_category(testing::surface_algebra(1), 6)};
    return io::envelope("potential", io::potential_json(p));
}

Json pairing_doc() {
    auto cat = testing::surface_algebra(2);
    return io::envelope("pairing", io::pairing_json(io::PairingDoc::from(cat, *cat.pairing)));
}

std::vector<Json> all_documents() {
    std::vector<Json> docs;
    for (const auto& n : cli::example_names()) docs.push_back(cli::example(n));
    docs.push_back(io::envelope("quiver", io::quiver_json(double_quiver(Quiver::a2()))));
    docs.push_back(io::envelope("ainf_category", io::ainf_json(testing::surface_algebra(2))));
    docs.push_back(potential_doc());
    docs.push_back(pairing_doc());
    Quiver kronecker{{"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}}, {}};
    MatrixRep r = MatrixRep::zero(kronecker, {1, 2}, FieldCtx::prime(7));
    r.mats[0].set(1, 0, Scalar::mod(7, 3));
    docs.push_back(io::envelope("matrix_rep", io::matrix_rep_json(r)));
    return docs;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("twocy_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string write(const std::string& name, const Json& j) const {
        auto p = path / name;
        std::ofstream(p) << io::dump(j);
        return p.string();
    }
};

// Report with the nondeterministic-free fields only; timings are off by default.
Json run1(const std::string& sub, const std::string& file, cli::Options o = {}) { return cli::run(sub, o, {file}).report; }

}  // namespace

TEST_CASE("every kind round-trips through parse and serialize") {
    std::set<std::string> kinds;
    for (const auto& j : all_documents()) {
        auto d = io::parse_document(j);
        kinds.insert(d.kind);
        CHECK(io::to_json(d) == j);
        CHECK(io::dump(io::to_json(io::parse_document(io::to_json(d)))) == io::dump(j));
    }
    CHECK(kinds == std::set<std::string>(io::kKinds.begin(), io::kKinds.end()));
}

TEST_CASE("round trip preserves the mathematical objects") {
    auto cat = testing::surface_algebra(2);
    auto back = std::get<AInfCategory>(io::parse_document(io::envelope("ainf_category", io::ainf_json(cat))).payload);
    REQUIRE(back.basis.size() == cat.basis.size());
    CHECK(check_relations(back, 4).pass);
    REQUIRE(back.pairing.has_value());
    CHECK(back.pairing->g == cat.pairing->g);

    auto alg = derived_preprojective(Quiver::loops(2));
    auto alg2 = std::get<DGQuiverAlgebra>(io::parse_document(io::envelope("dg_algebra", io::dg_algebra_json(alg))).payload);
    CHECK(io::dg_algebra_json(alg2) == io::dg_algebra_json(alg));
    CHECK(check_dg(alg2, 4).ok);

    auto hn = std::get<HNQuery>(io::parse_document(cli::example("hn-degree2")).payload);
    CHECK(hn.p == RatPolynomial({Scalar(0), Scalar(1), Scalar(1)}));
    CHECK(hn.bogomolov.has_value());
}

TEST_CASE("scalars and fields") {
    CHECK(io::parse_scalar(Json("-3/6"), "/x") == Scalar::ratio(-1, 2));
    CHECK(io::scalar_json(Scalar::ratio(-1, 2)) == Json("-1/2"));
    auto r = io::parse_scalar(Json{{"mod", 7}, {"val", 10}}, "/x");
    CHECK(r == Scalar::mod(7, 3));
    CHECK(io::scalar_json(r) == Json{{"mod", 7}, {"val", 3}});
    CHECK(io::field_name(io::parse_field("fp:11")) == "fp:11");
    CHECK(io::parse_field("Q").is_rational());
    CHECK_THROWS(io::parse_field("fp:12"));
    for (const char* bad : {"1/0", "x", "", "1.5", "--2"}) {
        try {
            io::parse_scalar(Json(bad), "/p/0");
            FAIL("accepted " << bad);
        } catch (const io::InputError& e) {
            CHECK(e.path() == "/p/0");
        }
    }
}

TEST_CASE("schema errors name the offending field") {
    struct Case {
        std::string example;
        std::function<void(Json&)> mutate;
        std::string path;
    };
    std::vector<Case> cases{
        {"qex-point", [](Json& j) { j["payload"]["mats"][0][1][0] = "1/0"; }, "/payload/mats/0/1/0"},
        {"qex-point", [](Json& j) { j["payload"]["mats"][1] = Json::array({Json::array({"1"})}); }, "/payload/mats/1/0"},
        {"qex-point", [](Json& j) { j["payload"]["d"] = Json::array({1}); }, "/payload/d"},
        {"qex-point", [](Json& j) { j["payload"]["field"] = "fp:4"; }, "/payload/field"},
        {"j2", [](Json& j) { j["version"] = 2; }, "/version"},
        {"j2", [](Json& j) { j["kind"] = "matrix"; }, "/kind"},
        {"j2", [](Json& j) { j["conventions"]["differential"] = "homological"; }, "/conventions/differential"},
        {"j2", [](Json& j) { j["payload"]["quiver"]["arrows"][0]["src"] = "9"; }, "/payload/quiver/arrows/0/src"},
        {"hn-degree1", [](Json& j) { j["payload"]["p"] = Json::array(); }, "/payload/p"},
        {"hn-degree2", [](Json& j) { j["payload"]["bogomolov"]["formula"]["kappa"] = 3; }, "/payload/bogomolov/formula/kappa"},
        {"a2-dpp", [](Json& j) { j["payload"]["degrees"] = Json::array({0}); }, "/payload/degrees"},
    };
    for (const auto& c : cases) {
        Json j = cli::example(c.example);
        c.mutate(j);
        CAPTURE(c.path);
        try {
            io::parse_document(j);
            FAIL("accepted");
        } catch (const io::InputError& e) {
            CHECK(e.path() == c.path);
        }
    }

    Json j = io::envelope("ainf_category", io::ainf_json(testing::surface_algebra(1)));
    j["payload"]["ops"][0]["inputs"][0] = "nope";
    CHECK_THROWS_AS(io::parse_document(j), io::InputError);
    j = potential_doc();
    j["payload"]["terms"][0]["word"][0] = "d:nope";
    CHECK_THROWS_AS(io::parse_document(j), io::InputError);
}

TEST_CASE("cli reports: exit codes and verdicts") {
    TempDir dir;
    for (const auto& n : cli::example_names()) dir.write(n + ".json", cli::example(n));

    auto r = run1("moment-check", (dir.path / "qex-point.json").string());
    CHECK(r["exit_code"] == 0);
    CHECK(r["result"]["on_zero_fiber"] == true);
    r = run1("moment-check", (dir.path / "qex-off-fiber.json").string());
    CHECK(r["exit_code"] == 1);
    CHECK(r["verdict"] == "fail");
    CHECK(r["witnesses"].size() >= 1);

    Json bad = cli::example("qex-point");
    bad["payload"]["mats"][0][0][0] = "1/0";
    r = run1("moment-check", dir.write("bad.json", bad));
    CHECK(r["exit_code"] == 2);
    CHECK(r["error"]["path"] == "/payload/mats/0/0/0");

    r = run1("moment-check", (dir.path / "missing.json").string());
    CHECK(r["exit_code"] == 2);
    r = cli::run("moment-check", {}, {}).report;
    CHECK(r["exit_code"] == 2);
    r = run1("hn-enum", (dir.path / "j2.json").string());
    CHECK(r["exit_code"] == 2);

    cli::Options low;
    low.order_cap = 2;
    r = run1("check-ainf", dir.write("ext.json", io::envelope("ainf_category", io::ainf_json(*testing::ext_minimal_model(Quiver::jordan(), 3, 4)))), low);
    CHECK(r["exit_code"] == 0);
    low.order_cap = 6;
    r = run1("check-ainf", (dir.path / "ext.json").string(), low);
    CHECK(r["exit_code"] == 3);
    CHECK(r["truncation"]["insufficient"] == true);

    cli::Options st;
    st.field = FieldCtx::prime(5);
    st.zeta = {Scalar(1), Scalar(-1)};
    CHECK(run1("stability", (dir.path / "qe2-point.json").string(), st)["result"]["stability"] == "stable");
    st.zeta = {Scalar(-1), Scalar(1)};
    CHECK(run1("stability", (dir.path / "qe2-point.json").string(), st)["exit_code"] == 1);
    CHECK(run1("stability", (dir.path / "qe2-point.json").string())["exit_code"] == 2);

    r = run1("semisimplify", (dir.path / "j2.json").string());
    auto ss = std::get<MatrixRep>(io::parse_document(r["result"]["rep"]).payload);
    CHECK(ss.mats[0].is_zero());

    r = run1("formality", (dir.path / "jordan-dpp.json").string());
    CHECK(r["result"]["certified"] == true);
    CHECK(r["result"]["cubic"] == true);

    cli::Options lm;
    lm.dim = {1, 2};
    r = run1("local-model", (dir.path / "a2-dpp.json").string(), lm);
    CHECK(r["exit_code"] == 0);
    CHECK(r["result"]["equations"].size() == 5);
    r = run1("euler-compare", (dir.path / "a2-dpp.json").string(), lm);
    CHECK(r["result"]["twice_euler_form"] == r["result"]["ext_alternating_sum"]);

    r = run1("hn-enum", (dir.path / "hn-degree2.json").string());
    CHECK(r["result"]["count"] == 3);
    CHECK(!cli::render_text(r).empty());
}

TEST_CASE("batch equals individual runs and output is deterministic") {
    TempDir dir;
    for (const auto& n : {"qe2-point", "qex-point", "qex-off-fiber", "j2"}) dir.write(std::string(n) + ".json", cli::example(n));
    Json bad = cli::example("qex-point");
    bad["payload"]["field"] = "fp:4";
    dir.write("bad.json", bad);

    auto batch = cli::run_batch("moment-check", {}, dir.path.string());
    const auto& entries = batch.report["batch"];
    REQUIRE(entries.size() == 5);
    std::vector<std::string> names;
    for (const auto& e : entries) {
        names.push_back(e["file"]);
        auto single = cli::run("moment-check", {}, {(dir.path / e["file"].get<std::string>()).string()});
        CHECK(io::dump(single.report) == io::dump(e["report"]));
        CHECK(single.exit == e["exit_code"]);
    }
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(batch.exit == 2);

    for (const auto& [sub, file] : std::vector<std::pair<std::string, std::string>>{{"formality", "jordan-dpp"}, {"hn-enum", "hn-degree2"}, {"semisimplify", "j2"}}) {
        auto f = dir.write(file + ".json", cli::example(file));
        CHECK(io::dump(run1(sub, f)) == io::dump(run1(sub, f)));
    }
}
