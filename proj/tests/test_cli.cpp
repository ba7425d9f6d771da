#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* kBin = GHOSTLEVEL_BIN;

int run(const std::string& args) {
    std::string cmd = std::string(kBin) + " " + args + " > /dev/null 2>&1";
    int ret = std::system(cmd.c_str());
    return WEXITSTATUS(ret);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / "ghl_cli" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("level: formula result, reproducible bytes, verify round-trip") {
    auto d1 = fresh_dir("level1");
    auto d2 = fresh_dir("level2");
    std::string common = "level --group 'SU(3)' --n 3 --char 0 --D 60 --out ";
    CHECK(run(common + d1.string()) == 0);
    CHECK(run(common + d2.string()) == 0);
    auto f1 = d1 / "level_SU3_n3_c0.json";
    auto f2 = d2 / "level_SU3_n3_c0.json";
    REQUIRE(fs::exists(f1));
    CHECK(slurp(f1) == slurp(f2));  // byte-identical payloads

    auto j = nlohmann::json::parse(slurp(f1));
    CHECK(j["result"]["lower"] == 5);
    CHECK(j["result"]["upper"] == 5);
    CHECK(j["result"]["exact"] == true);
    CHECK(j["result"]["pd"] == 4);

    CHECK(run("verify " + f1.string()) == 0);

    // tampering is caught
    j["result"]["lower"] = 3;
    auto tampered = d1 / "tampered.json";
    std::ofstream(tampered) << j.dump(1);
    CHECK(run("verify " + tampered.string()) == 1);
}

TEST_CASE("every command emits a certificate that verify accepts") {
    auto d = fresh_dir("kinds");
    std::string tail = " --group 'SU(2)' --char 5 --D 40 --seed 7 --trials 5 --out " + d.string();
    CHECK(run("tor --n 2" + tail) == 0);
    CHECK(run("ext --n 2" + tail) == 0);
    CHECK(run("ghost-chain --n 3" + tail) == 0);
    CHECK(run("loop" + tail) == 0);
    CHECK(run("em --n 2" + tail) == 0);
    CHECK(run("transgression" + tail) == 0);
    CHECK(run("level --n 2" + tail) == 0);
    int checked = 0;
    for (const auto& e : fs::directory_iterator(d)) {
        CHECK(run("verify " + e.path().string()) == 0);
        ++checked;
    }
    CHECK(checked == 7);
}

TEST_CASE("usage and catalog errors exit with code 2") {
    CHECK(run("level --group 'SO(5)' --n 2 --char 2 --D 40") == 2);  // rejected characteristic
    CHECK(run("level --group E8 --n 2 --char 0 --D 40") == 2);     // unknown group
    CHECK(run("level --group 'Sp(3)' --n 3 --char 0 --D 40") == 2);  // D below the floor
    CHECK(run("level --n 2 --char 0") == 2);                       // no group
}

TEST_CASE("catalog listing and user catalogs") {
    CHECK(run("catalog") == 0);
    auto d = fresh_dir("cat");
    auto good = d / "good.cat";
    std::ofstream(good) << "X(1) 4,6 8 exclude:2\n";
    CHECK(run("catalog --catalog " + good.string()) == 0);
    CHECK(run(("level --group 'X(1)' --n 2 --char 0 --D 40 --catalog " + good.string() +
               " --out " + d.string())) == 0);
    auto bad = d / "bad.cat";
    std::ofstream(bad) << "X(1) 4,6 9 all\n";  // lie_dim inconsistent
    CHECK(run("catalog --catalog " + bad.string()) == 2);
}

TEST_CASE("config files supply defaults, flags override") {
    auto d = fresh_dir("config");
    auto cfg = d / "run.cfg";
    std::ofstream(cfg) << "group = SU(2)\nn = 2\nchar = 5\nD = 40\nout = " << d.string() << "\n";
    CHECK(run("level --config " + cfg.string()) == 0);
    CHECK(fs::exists(d / "level_SU2_n2_c5.json"));
    // flag overrides the config n
    CHECK(run("level --config " + cfg.string() + " --n 3 --D 60") == 0);
    CHECK(fs::exists(d / "level_SU2_n3_c5.json"));
}
