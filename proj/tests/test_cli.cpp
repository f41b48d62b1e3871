// End-to-end tests of the command-line binary. The harness passes the binary
// location through DERLPSO_CLI.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "derlpso/bench.hpp"
#include "derlpso/estimator.hpp"
#include "derlpso/io.hpp"

using namespace derlpso;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("DERLPSO_CLI");
    REQUIRE_MESSAGE(env != nullptr, "DERLPSO_CLI must point at the built binary");
    return env;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("derlpso_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("simulate is byte-for-byte reproducible") {
    TempDir a, b;
    CHECK(run_cli("simulate --equation lotka-volterra --points 10 --trials 3 --seed 7 --out " +
                  a.str()) == 0);
    CHECK(run_cli("simulate --equation lotka-volterra --points 10 --trials 3 --seed 7 --out " +
                  b.str()) == 0);
    for (int t = 0; t < 3; ++t) {
        const std::string name = "problem_lotka-volterra_10pt_t" + std::to_string(t) + ".json";
        CHECK(io::read_text(a.path / name) == io::read_text(b.path / name));
    }
}

TEST_CASE("unknown equation id exits with the usage code") {
    TempDir dir;
    CHECK(run_cli("simulate --equation waves --out " + dir.str()) == 2);
}

TEST_CASE("a one-point grid is rejected") {
    TempDir dir;
    CHECK(run_cli("simulate --equation lorenz --points 1 --out " + dir.str()) == 2);
}

TEST_CASE("corrupt problem files exit with the usage code") {
    TempDir dir;
    const fs::path bad = dir.path / "bad.json";
    io::write_text_atomic(bad, "{\"version\": 1, \"equation\": \"lorenz\"");
    CHECK(run_cli("estimate --problem " + bad.string()) == 2);

    const fs::path bad2 = dir.path / "bad2.json";
    io::write_text_atomic(bad2, "{\"version\": 1, \"equation\": \"lorenz\"}");
    CHECK(run_cli("estimate --problem " + bad2.string()) == 2);
}

TEST_CASE("simulate then estimate equals the in-process run") {
    TempDir dir;
    const std::uint64_t seed_base = 21;
    CHECK(run_cli("simulate --equation lorenz --points 8 --trials 1 --seed " +
                  std::to_string(seed_base) + " --out " + dir.str()) == 0);
    const fs::path problem_path = dir.path / "problem_lorenz_8pt_t0.json";

    const std::uint64_t est_seed = estimation_seed_for_trial(seed_base, 0);
    CHECK(run_cli("estimate --problem " + problem_path.string() + " --algo derlpso --seed " +
                  std::to_string(est_seed) + " --max-iterations 20 --out " + dir.str()) == 0);

    // In-process twin with the same seeds.
    IntegratorConfig integ;
    const Problem problem =
        generate_problem(Equation::Lorenz, 8, problem_seed_for_trial(seed_base, 0), 0.5, integ);
    RunConfig config = default_run_config(Equation::Lorenz);
    config.swarm.max_iterations = 20;
    const EstimationResult expected = run_derlpso(problem, config, est_seed);

    const io::json result =
        io::json::parse(io::read_text(dir.path / "problem_lorenz_8pt_t0.derlpso.result.json"));
    CHECK(result.at("best_loss").get<double>() == expected.best_loss);
    CHECK(result.at("best_params").get<std::vector<double>>() == expected.best_params);
    CHECK(result.at("loss_curve").get<std::vector<double>>() == expected.loss_curve);
    CHECK(result.at("seed").get<std::uint64_t>() == est_seed);
    CHECK(result.at("config_echo").at("max_iterations").get<int>() == 20);

    // The curve file mirrors the loss curve.
    const std::string curve =
        io::read_text(dir.path / "problem_lorenz_8pt_t0.derlpso.curve.csv");
    CHECK(curve.starts_with("iteration,gbest_loss\n0,"));
}

TEST_CASE("estimate runs the rllpso baseline on the same problem file") {
    TempDir dir;
    CHECK(run_cli("simulate --equation lorenz --points 5 --trials 1 --seed 4 --out " +
                  dir.str()) == 0);
    const std::string problem = (dir.path / "problem_lorenz_5pt_t0.json").string();
    CHECK(run_cli("estimate --problem " + problem +
                  " --algo rllpso --seed 9 --max-iterations 10 --out " + dir.str()) == 0);
    CHECK(run_cli("estimate --problem " + problem +
                  " --algo derlpso --seed 9 --max-iterations 10 --out " + dir.str()) == 0);
    CHECK(fs::exists(dir.path / "problem_lorenz_5pt_t0.rllpso.result.json"));
    CHECK(fs::exists(dir.path / "problem_lorenz_5pt_t0.derlpso.result.json"));
}

TEST_CASE("estimate with a zero budget echoes the best initial particle") {
    TempDir dir;
    CHECK(run_cli("simulate --equation heat --points 10 --trials 1 --seed 2 --out " +
                  dir.str()) == 0);
    CHECK(run_cli("estimate --problem " + (dir.path / "problem_heat_10pt_t0.json").string() +
                  " --max-iterations 0 --out " + dir.str()) == 0);
    const io::json result =
        io::json::parse(io::read_text(dir.path / "problem_heat_10pt_t0.derlpso.result.json"));
    CHECK(result.at("iterations_used").get<int>() == 0);
    CHECK(result.at("loss_curve").empty());
}

TEST_CASE("benchmark writes the summary and manifest") {
    TempDir dir;
    const fs::path spec_path = dir.path / "spec.json";
    io::json spec;
    spec["equation"] = "heat";
    spec["points"] = {10};
    spec["trials"] = 2;
    spec["seed_base"] = 3;
    spec["algorithms"] = "both";
    spec["config"] = {{"max_iterations", 5}};
    io::write_text_atomic(spec_path, spec.dump());

    CHECK(run_cli("benchmark --spec " + spec_path.string() + " --jobs 2 --out " + dir.str()) ==
          0);
    const std::string summary = io::read_text(dir.path / "summary.csv");
    CHECK(summary.starts_with("equation,points,algorithm,trials,"));
    // Header plus one row per (points, algorithm).
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);

    const io::json manifest = io::json::parse(io::read_text(dir.path / "manifest.json"));
    CHECK(manifest.at("cells").size() == 2);
    CHECK(manifest.at("spec").at("trials").get<int>() == 2);
}

TEST_CASE("benchmark rejects a broken spec with a line-numbered message") {
    TempDir dir;
    const fs::path spec_path = dir.path / "broken.json";
    io::write_text_atomic(spec_path, "{\n  \"equation\": \"heat\",\n  points: []\n}\n");
    CHECK(run_cli("benchmark --spec " + spec_path.string()) == 2);
}

TEST_CASE("missing required flags exit with the usage code") {
    CHECK(run_cli("simulate") == 2);
    CHECK(run_cli("estimate") == 2);
    CHECK(run_cli("benchmark") == 2);
    CHECK(run_cli("") == 2);
}

TEST_CASE("DERLPSO_OUT_DIR supplies the default output directory") {
    TempDir dir;
    const std::string cmd = "DERLPSO_OUT_DIR=" + dir.str() + " " + cli_path() +
                            " simulate --equation heat --points 10 --trials 1 --seed 5" +
                            " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(dir.path / "problem_heat_10pt_t0.json"));
}
