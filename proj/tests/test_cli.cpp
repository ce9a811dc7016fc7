#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bootlab/config.hpp"
#include "bootlab/records.hpp"
#include "json.hpp"

using namespace bootlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "bootlab_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
    std::ostringstream o, e;
    const int code = cli_main(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return code;
}

EstimateRecord sample_record() {
    EstimateRecord r;
    r.experiment = "plane-is";
    r.theta = 5;
    r.ell = 2;
    r.a = 0.1;
    r.n = 400;
    r.mode = "r=3;p=0.25";
    r.boundary = "EMPTY_WALL";
    r.seed = 7;
    r.set_counts(3, 1);
    return r;
}

}  // namespace

TEST_CASE("csv header and round trip") {
    CHECK(to_csv({}) == std::string(kCsvHeader) + "\n");
    const auto r = sample_record();
    const auto csv = to_csv({r});
    CHECK(csv.find("0.10000000000000001") != std::string::npos);
    CHECK(csv.find(",,") != std::string::npos);
    const auto back = parse_csv(csv);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == r);

    auto quoted = r;
    quoted.mode = "a,\"b\"";
    CHECK(parse_csv(to_csv({quoted}))[0] == quoted);
}

TEST_CASE("json mirrors csv field for field") {
    auto r = sample_record();
    auto s = r;
    s.theta.reset();
    s.a.reset();
    const std::vector<EstimateRecord> recs{r, s};
    const auto json = to_json(recs);
    const auto parsed = nlohmann::json::parse(json);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[1]["theta"].is_null());
    CHECK(parsed[0]["stderr"].get<double>() == r.standardError);
    CHECK(parse_json(json) == recs);
    CHECK(parse_json(json) == parse_csv(to_csv(recs)));
    CHECK(render_records(recs, RecordFormat::Json) == json);
}

TEST_CASE("write_records is atomic and reports failures") {
    const auto path = scratch("records.csv");
    write_records({sample_record()}, path, RecordFormat::Csv);
    CHECK(slurp(path) == to_csv({sample_record()}));
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
    CHECK_THROWS_AS(write_records({}, "/nonexistent-dir/x.csv", RecordFormat::Csv), IoError);
}

TEST_CASE("parse_config accepts the documented example and rejects bad input") {
    const auto cfg = parse_config({"plane-stats", "--theta", "5", "--ell", "2", "--a", "2", "--n", "400", "--trials",
                                   "2000", "--seed", "7"});
    CHECK(cfg.command == "plane-stats");
    CHECK(cfg.integer("n") == 400);
    CHECK(cfg.real("a") == 2.0);

    try {
        parse_config({"plane-stats", "--theta", "5", "--a", "2", "--n", "400", "--trials", "20"});
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("--seed") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config({"plane-stats", "--theta", "5", "--ell", "1", "--a", "2", "--n", "40", "--trials",
                                  "2", "--seed", "1"}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config({"plane-stats", "--theta", "5", "--a", "2", "--p", "0.1", "--n", "40", "--trials",
                                  "2", "--seed", "1"}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config({"plane-stats", "--theta", "5", "--a", "2", "--n", "40", "--trials", "2", "--seed",
                                  "1", "--bogus", "3"}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config({"density", "--theta", "4", "--a", "1", "--n", "40", "--L", "0", "--trials", "2",
                                  "--seed", "1"}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config({"density", "--theta", "4", "--a", "1,2", "--n", "40", "--L", "8", "--trials", "2",
                                  "--seed", "1"}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config({"frobnicate"}), ConfigError);
    CHECK_THROWS_AS(parse_config({"validate", "--config", scratch("missing.cfg").string()}), ConfigError);
}

TEST_CASE("config files and flag overrides") {
    const auto file = scratch("exp.cfg");
    {
        std::ofstream out(file);
        out << "command=phi-curve\ntheta=3\na=0.5,1,2\nL=16\ntrials=10\nseed=1\n";
    }
    const auto cfg = parse_config({"--config", file.string(), "--seed", "9"});
    CHECK(cfg.command == "phi-curve");
    CHECK(cfg.integer("seed") == 9);
    CHECK(cfg.reals("a") == std::vector<double>{0.5, 1, 2});
    const auto viaArg = parse_config({"--seed", "4"}, file);
    CHECK(viaArg.integer("seed") == 4);

    // to_text reproduces an equivalent configuration.
    const auto again = scratch("again.cfg");
    {
        std::ofstream out(again);
        out << cfg.to_text();
    }
    const auto round = parse_config({"--config", again.string()});
    CHECK(round.command == cfg.command);
    CHECK(round.params == cfg.params);

    const auto extra = scratch("extra.cfg");
    {
        std::ofstream out(extra);
        out << "command=phi-curve\ntheta=3\na=1\nL=16\ntrials=10\nseed=1\ncolour=blue\n";
    }
    CHECK_THROWS_AS(parse_config({"--config", extra.string()}), ConfigError);
}

TEST_CASE("phi-curve emits two records per a") {
    std::string out;
    CHECK(run({"phi-curve", "--theta", "3", "--a", "0.5,1,2", "--L", "16", "--trials", "5", "--seed", "1"}, &out) == 0);
    const auto recs = parse_csv(out);
    CHECK(recs.size() == 6);
    CHECK(recs[0].boundary == "EMPTY_WALL");
    CHECK(recs[1].boundary == "OCCUPIED_WALL");
}

TEST_CASE("exit codes") {
    std::string out, err;
    CHECK(run({"validate", "--quick", "--seed", "3"}, &out, &err) == 0);
    CHECK(out.find("[FAIL]") == std::string::npos);
    CHECK(run({"plane-stats", "--theta", "5"}, &out, &err) == 2);
    CHECK(err.find("missing") != std::string::npos);
    CHECK(run({"sandwich-check", "--theta", "4", "--n", "6", "--L", "4", "--a", "2", "--trials", "20", "--seed", "2"},
              &out, &err) == 0);
    CHECK(run({"density", "--theta", "4", "--a", "1", "--n", "5000", "--L", "64", "--trials", "1", "--seed", "1",
               "--mode", "DIRECT"},
              &out, &err) == 2);
    CHECK(run({"plane-stats", "--theta", "5", "--a", "2", "--n", "40", "--trials", "5", "--seed", "1", "--out",
               "/nonexistent-dir/x.csv"},
              &out, &err) == 2);
}

TEST_CASE("output files are byte-identical across runs and honour the directory variable") {
    const auto dir = scratch("outdir");
    fs::create_directories(dir);
    ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
    const std::vector<std::string> args{"density", "--theta", "4", "--a", "2", "--n", "30", "--L", "6", "--trials",
                                        "20", "--seed", "5", "--mode", "ALL", "--out", "run.json"};
    REQUIRE(run(args) == 0);
    const auto first = slurp(dir / "run.json");
    REQUIRE(run(args) == 0);
    CHECK(slurp(dir / "run.json") == first);
    CHECK(parse_json(first).size() == 3);

    REQUIRE(run({"hetero-run", "--L", "9", "--seed", "2", "--init", "POLLUTED", "--p", "0.2", "--q", "0.1", "--dump",
                 (dir / "final.txt").string()}) == 0);
    CHECK(fs::exists(dir / "hetero-run.csv"));
    const auto snap = slurp(dir / "final.txt");
    CHECK(std::count(snap.begin(), snap.end(), '\n') == 9);
    ::unsetenv(kOutputDirEnv);
}
