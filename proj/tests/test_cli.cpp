#include "vbf/analysis.hpp"
#include "vbf/cli.hpp"
#include "vbf/record.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vbf;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("vbf_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("analyze emits a schema-1 record") {
    auto r = run({"analyze", "--n", "6", "--d1", "3", "--d2", "10", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["sf_size"] == 8);
    CHECK(j["class_label"] == "binomial-class");
    CHECK(j.begin().key() == "schema");
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys[1] == "tool_version");
    CHECK(keys.back() == "checks");

    // Options may follow or precede the subcommand.
    auto r2 = run({"--n", "6", "--format", "json", "analyze", "--d1", "3", "--d2", "10"});
    CHECK(r2.out == r.out);
}

TEST_CASE("record round trip") {
    auto K = make_field(8);
    for (auto [d1, d2] : {std::pair{5u, 20u}, std::pair{3u, 48u}, std::pair{7u, 11u}}) {
        const auto rec = analyze_binomial(K, d1, d2, {2, false});
        const auto line = to_json_line(rec);
        CHECK(record_from_json(line) == rec);
        CHECK(to_json_line(record_from_json(line)) == line);
        CHECK(rec.ok());
    }
    const auto rec = analyze_binomial(K, 5, 20);
    REQUIRE(rec.ledger);
    CHECK(rec.ledger->j == 3);
    CHECK(rec.s == std::optional<std::uint64_t>{5});
    CHECK_THROWS(record_from_json("{\"schema\":2}"));
    CHECK_THROWS(record_from_json("not json"));

    std::stringstream csv(to_csv_row(rec));
    std::string cell;
    int cells = 0;
    while (std::getline(csv, cell, ',')) ++cells;
    int header_cells = 1;
    for (char ch : csv_header()) header_cells += ch == ',';
    CHECK(cells + (to_csv_row(rec).back() == ',') == header_cells);
}

TEST_CASE("exit codes") {
    CHECK(run({"table1", "--n", "5"}).code == 2);
    CHECK(run({"analyze", "--n", "6", "--d1", "3"}).code == 2);
    CHECK(run({"analyze", "--n", "6", "--d1", "3", "--d2", "3"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"field", "--n", "6", "--modulus", "0x41"}).code == 2);  // reducible
    CHECK(run({"field", "--n", "6", "--modulus", "0x5b"}).code == 0);
    CHECK(run({"field", "--n", "6", "--format", "xml"}).code == 2);

    auto gate = run({"analyze", "--n", "16", "--d1", "3", "--d2", "258"});
    CHECK(gate.code == 2);
    CHECK(gate.err.find("--long-run") != std::string::npos);
    CHECK(run({"search", "--n", "16"}).code == 2);
    CHECK(run({"gauss", "--n", "14"}).code == 2);
    CHECK(run({"table1", "--n", "22"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("ell warns when l(n) <= m") {
    auto r = run({"ell", "--n", "12"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("ell=5\n", 0) == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    auto r8 = run({"ell", "--n", "8"});
    CHECK(r8.out.rfind("ell=5\n", 0) == 0);
    CHECK(r8.err.empty());
}

TEST_CASE("table1 and verify") {
    auto t = run({"table1", "--from", "4", "--to", "12", "--format", "json"});
    CHECK(t.code == 0);
    CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 5);
    CHECK(run({"verify", "--n", "6", "--suite", "all"}).code == 0);
    CHECK(run({"verify", "--n", "6", "--suite", "all", "--inject-fault"}).code == 1);
    CHECK(run({"verify", "--n", "5", "--suite", "field"}).code == 0);

    auto img = run({"verify", "--n", "8", "--suite", "image"});
    CHECK(img.code == 0);
    CHECK(img.out.find("FLAG image/explicit_image_l2_dichotomy") != std::string::npos);
}

TEST_CASE("stick and gauss") {
    auto s = run({"stick", "--n", "8", "--d1", "5", "--d2", "20", "--valuation", "--format", "json"});
    CHECK(s.code == 0);
    const auto j = nlohmann::ordered_json::parse(s.out);
    CHECK(j["nu"] == 4);
    CHECK(j["ledger"]["j"] == 3);
    CHECK(j["valuation"]["holds"] == true);
    auto g = run({"gauss", "--n", "6", "--j", "5"});
    CHECK(g.code == 0);
    CHECK(g.out.find("congruence_failures=0") != std::string::npos);
}

TEST_CASE("search output is independent of the thread count") {
    auto a = run({"search", "--n", "6", "--jobs", "1", "--format", "json"});
    auto b = run({"search", "--n", "6", "--jobs", "8", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 5);
}

TEST_CASE("cache reuse and revalidation") {
    const auto dir = fresh_dir("cache");
    const std::vector<std::string> cmd{"analyze", "--n", "8", "--d1", "5", "--d2", "20", "--format", "json", "--cache", dir.string()};
    auto first = run(cmd);
    CHECK(first.code == 0);
    const auto file = dir / "records.jsonl";
    REQUIRE(std::filesystem::exists(file));
    auto second = run(cmd);
    CHECK(second.out == first.out);
    {
        std::ifstream in(file);
        std::string line;
        int lines = 0;
        while (std::getline(in, line)) ++lines;
        CHECK(lines == 1);
    }

    // A tampered record fails the spot check and is recomputed.
    auto rec = record_from_json(first.out.substr(0, first.out.size() - 1));
    rec.nonlinearity += 40;
    {
        std::ofstream out(file, std::ios::trunc);
        out << to_json_line(rec) << '\n';
    }
    auto third = run(cmd);
    CHECK(third.out == first.out);
    std::filesystem::remove_all(dir);
}
