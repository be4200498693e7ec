#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ddsurf/cli.hpp"
#include "ddsurf/json_io.hpp"

using namespace ddsurf;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        dir_ = std::filesystem::temp_directory_path() /
               ("ddsurf_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() { std::filesystem::remove_all(dir_); }
    std::string file(const std::string& name, const std::string& contents) const {
        auto path = dir_ / name;
        std::ofstream f(path);
        f << contents;
        return path.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    std::filesystem::path dir_;
};

const char* kFlagship = R"({"field": "Q", "d": 1, "e": 2, "P": "Z^2 - 1", "Q": "Y^2 + Z"})";

}  // namespace

TEST_CASE("info prints the tuple and flags") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    RunResult r = run({"info", spec});
    CHECK(r.code == 0);
    CHECK(r.out.find("tuple=(1,2,2,2)") != std::string::npos);
    CHECK(r.out.find("double=yes") != std::string::npos);
    CHECK(r.out.find("mlc=yes") != std::string::npos);
    CHECK(r.out.find("stable-hyp=pass") != std::string::npos);
}

TEST_CASE("info on a plane-like surface is informational, exit 0") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", R"({"field": "Q", "d": 1, "e": 1, "P": "Z", "Q": "Y"})");
    RunResult r = run({"info", spec});
    CHECK(r.code == 0);
    CHECK(r.out.find("double=no") != std::string::npos);
    CHECK(r.out.find("mlc=no") != std::string::npos);
}

TEST_CASE("malformed specs exit 2 and name the violated invariant") {
    TempDir tmp;
    std::string spec =
        tmp.file("spec.json", R"({"field": "Q", "d": 1, "e": 2, "P": "2*Z^2 - 1", "Q": "Y^2 + Z"})");
    RunResult r = run({"info", spec});
    CHECK(r.code == 2);
    CHECK(r.err.find("monic") != std::string::npos);

    CHECK(run({"info", tmp.path("missing.json")}).code == 2);
    CHECK(run({"info"}).code == 2);  // usage
}

TEST_CASE("normalize prints the rewritten form and the Laurent image") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    RunResult r = run({"normalize", spec, "x^2*t"});
    CHECK(r.code == 0);
    CHECK(r.out.find("normal form: y^2 + z") != std::string::npos);
    CHECK(r.out.find("laurent:") != std::string::npos);
}

TEST_CASE("expmap-verify on the canonical and on a broken map") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    CHECK(run({"expmap-verify", spec}).code == 0);

    std::string bad = tmp.file("map.json",
                               R"({"x": "x", "y": "y + 2*x^2*z*U + x^5*U^2", "z": "z + x^2*U", "t": "t"})");
    RunResult r = run({"expmap-verify", spec, bad});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("iso verify and solve") {
    TempDir tmp;
    std::string src = tmp.file("src.json", kFlagship);
    std::string tgt = tmp.file("tgt.json",
                               R"({"field": "Q", "d": 1, "e": 2, "P": "Z^2 - 4", "Q": "Y^2 + 8*Z"})");
    std::string good =
        tmp.file("data.json", R"({"lambda": "1", "gamma": "1/2", "delta": "0", "f": "0", "h": "0"})");
    CHECK(run({"iso", "verify", src, tgt, good}).code == 0);

    std::string bad =
        tmp.file("bad.json", R"({"lambda": "1", "gamma": "1", "delta": "X", "f": "0", "h": "0"})");
    RunResult r = run({"iso", "verify", src, src, bad});
    CHECK(r.code == 1);
    CHECK(r.err.find("not killed") != std::string::npos);

    RunResult s = run({"iso", "solve", src, src});
    CHECK(s.code == 0);
    CHECK(s.out.find("gamma = 1") != std::string::npos);
    CHECK(s.out.find("gamma = -1") != std::string::npos);
}

TEST_CASE("automorphism seeds through the CLI") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    RunResult good = run({"auto", spec, "--lambda", "-1", "--lambda2", "1"});
    CHECK(good.code == 0);
    CHECK(good.out.find("PASS prop-vi-t-affine") != std::string::npos);

    RunResult bad = run({"auto", spec, "--lambda", "1", "--lambda2", "-1"});
    CHECK(bad.code == 1);
}

TEST_CASE("stable build then verify round-trips through a file") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    std::string cert = tmp.path("cert.json");
    RunResult b = run({"stable", "build", spec, "--out", cert});
    CHECK(b.code == 0);
    RunResult v = run({"stable", "verify", cert});
    CHECK(v.code == 0);
    CHECK(v.out.find("7/7 PASS") != std::string::npos);

    // tamper with the certificate on disk
    json j;
    {
        std::ifstream in(cert);
        in >> j;
    }
    j["v"] = j["v"].get<std::string>() + " + 1";
    std::string tampered = tmp.file("tampered.json", j.dump());
    RunResult t = run({"stable", "verify", tampered});
    CHECK(t.code == 1);
    CHECK(t.out.find("FAIL 06-generator-witnesses") != std::string::npos);
}

TEST_CASE("stable build refuses non-regular data with exit 1") {
    TempDir tmp;
    std::string spec =
        tmp.file("spec.json", R"({"field": "Q", "d": 1, "e": 2, "P": "Z^2", "Q": "Y^2 + Z"})");
    RunResult r = run({"stable", "build", spec});
    CHECK(r.code == 1);
    CHECK(r.err.find("zero divisor") != std::string::npos);
}

TEST_CASE("cancel-demo runs the whole pipeline") {
    TempDir tmp;
    std::string spec =
        tmp.file("spec.json", R"({"field": "Q", "d": 1, "e": 1, "P": "Z^2 - 1", "Q": "Y^2 + Z"})");
    RunResult r = run({"cancel-demo", spec});
    CHECK(r.code == 0);
    CHECK(r.out.find("differ in e") != std::string::npos);
    CHECK(r.out.find("cancellation counter-example verified") != std::string::npos);
}

TEST_CASE("--json emits machine-readable output") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    RunResult r = run({"info", spec, "--json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("tuple") == "(1,2,2,2)");
    CHECK(j.at("stable_hypotheses").at("pass") == true);
}

TEST_CASE("prime-field spec files work end to end") {
    TempDir tmp;
    std::string spec = tmp.file("spec7.json",
                                R"({"field": {"Fp": 7}, "d": 1, "e": 2, "P": "Z^2 - 1", "Q": "Y^2 + Z"})");
    RunResult info = run({"info", spec});
    CHECK(info.code == 0);
    CHECK(info.out.find("field=F7") != std::string::npos);
    CHECK(run({"expmap-verify", spec}).code == 0);
    CHECK(run({"normalize", spec, "x^2*t + 6"}).code == 0);

    std::string bad = tmp.file("spec6.json",
                               R"({"field": {"Fp": 6}, "d": 1, "e": 2, "P": "Z^2 - 1", "Q": "Y^2 + Z"})");
    CHECK(run({"info", bad}).code == 2);  // 6 is not prime
}

TEST_CASE("--field guards against mismatched inputs") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    CHECK(run({"info", spec, "--field", "Q"}).code == 0);
    CHECK(run({"info", spec, "--field", "Fp:7"}).code == 2);
    CHECK(run({"info", spec, "--field", "nonsense"}).code == 2);
}

TEST_CASE("report lines are sorted by check name") {
    TempDir tmp;
    std::string spec = tmp.file("spec.json", kFlagship);
    RunResult r = run({"expmap-verify", spec});
    std::vector<std::string> names;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("PASS ", 0) == 0) names.push_back(line.substr(5));
    }
    CHECK(names.size() >= 10);
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("automorphism seeds with shifts through the CLI") {
    TempDir tmp;
    std::string spec = tmp.file("spec11.json",
                                R"({"field": "Q", "d": 1, "e": 1, "P": "Z^2 - 1", "Q": "Y^2 + Z"})");
    RunResult r = run({"auto", spec, "--lambda", "1", "--lambda2", "1", "--mu2", "X^2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("psi(z) = x^2 + z") != std::string::npos);
}
