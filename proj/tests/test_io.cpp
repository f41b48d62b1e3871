#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "derlpso/bench.hpp"
#include "derlpso/io.hpp"

using namespace derlpso;

TEST_CASE("problem json round-trips bit-exactly") {
    IntegratorConfig integ;
    for (Equation eq : kAllEquations) {
        const Problem problem = generate_problem(eq, is_ode(eq) ? 10 : 8, 77, 0.5, integ);
        const io::json j = io::problem_to_json(problem);
        const Problem back = io::problem_from_json(io::json::parse(j.dump()));
        CHECK(back.equation == problem.equation);
        CHECK(back.seed == problem.seed);
        CHECK(back.true_params == problem.true_params);
        CHECK(back.observed.rows == problem.observed.rows);
        CHECK(back.observed.cols == problem.observed.cols);
        CHECK(back.observed.data == problem.observed.data);
        if (is_ode(eq)) {
            CHECK(back.initial_state == problem.initial_state);
            CHECK(back.time_grid.points == problem.time_grid.points);
        }
    }
}

TEST_CASE("problem json rejects schema violations") {
    IntegratorConfig integ;
    const Problem problem = generate_problem(Equation::Heat, 8, 1, 0.5, integ);
    io::json good = io::problem_to_json(problem);

    io::json bad_version = good;
    bad_version["version"] = 2;
    CHECK_THROWS_AS(io::problem_from_json(bad_version), std::runtime_error);

    io::json bad_equation = good;
    bad_equation["equation"] = "wave";
    CHECK_THROWS_AS(io::problem_from_json(bad_equation), std::runtime_error);

    io::json bad_shape = good;
    bad_shape["observed"]["rows"] = 3;
    CHECK_THROWS_AS(io::problem_from_json(bad_shape), std::runtime_error);

    io::json bad_tag = good;
    bad_tag["initial_condition"] = "step";
    CHECK_THROWS_AS(io::problem_from_json(bad_tag), std::runtime_error);
}

TEST_CASE("config overrides apply and unknown keys are rejected") {
    RunConfig config = default_run_config(Equation::Lorenz);
    io::HarnessOptions options;
    io::apply_config(io::json::parse(R"({
        "population": 60,
        "phi": 0.3,
        "epsilon": 0.8,
        "alpha": 0.5,
        "gamma": 0.7,
        "level_candidates": [4, 6],
        "max_iterations": 33,
        "early_stop_loss": 1e-12,
        "rel_tol": 1e-9,
        "prior_std": 0.25,
        "fhn_constants": [2.5, 0.1]
    })"),
                     config, options);
    CHECK(config.swarm.population == 60);
    CHECK(config.swarm.phi == 0.3);
    CHECK(config.rl.epsilon == 0.8);
    CHECK(config.rl.learning_rate == 0.5);
    CHECK(config.rl.discount == 0.7);
    CHECK(config.level_candidates == std::vector<int>{4, 6});
    CHECK(config.swarm.max_iterations == 33);
    CHECK(config.swarm.early_stop_loss == 1e-12);
    CHECK(config.integrator.rel_tol == 1e-9);
    CHECK(options.prior_stddev == 0.25);
    CHECK(options.fhn_constants == std::vector<double>{2.5, 0.1});

    CHECK_THROWS_AS(
        io::apply_config(io::json::parse(R"({"popsize": 3})"), config, options),
        std::runtime_error);

    io::apply_config(io::json::parse(R"({"early_stop_loss": null})"), config, options);
    CHECK_FALSE(config.swarm.early_stop_loss.has_value());
}

TEST_CASE("loss curve csv has the two-column schema") {
    EstimationResult result;
    result.loss_curve = {0.5, 0.25};
    const std::string csv = io::loss_curve_csv(result);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "iteration,gbest_loss");
    std::getline(lines, line);
    CHECK(line == "0,0.5");
    std::getline(lines, line);
    CHECK(line == "1,0.25");
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("summary csv is schema-stable across parameter counts") {
    io::SummaryRow lv;
    lv.equation = "lotka-volterra";
    lv.points = 10;
    lv.algorithm = "derlpso";
    lv.trials = 2;
    lv.param_mse = {1.0, 2.0, 3.0, 4.0};
    lv.param_sd = {0.1, 0.2, 0.3, 0.4};
    lv.mean_mse = 2.5;
    lv.sd_mse = 0.25;
    lv.wall_seconds = 1.5;

    io::SummaryRow heat;
    heat.equation = "heat";
    heat.points = 20;
    heat.algorithm = "derlpso";
    heat.trials = 1;
    heat.param_mse = {7.0};
    heat.param_sd = {0.0};
    heat.mean_mse = 7.0;
    heat.sd_mse = 0.0;

    const std::string csv = io::summary_csv({lv, heat});
    std::istringstream lines(csv);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header ==
          "equation,points,algorithm,trials,p1_mse,p1_sd,p2_mse,p2_sd,p3_mse,p3_sd,"
          "p4_mse,p4_sd,mean_mse,sd_mse,wall_seconds");
    CHECK(row1 == "lotka-volterra,10,derlpso,2,1,0.1,2,0.2,3,0.3,4,0.4,2.5,0.25,1.5");
    CHECK(row2 == "heat,20,derlpso,1,7,0,,,,,,,7,0,0");
}

TEST_CASE("benchmark seeds pair the two algorithms and the results are identical across jobs") {
    BenchmarkSpec spec;
    spec.equation = Equation::Lorenz;
    spec.points = {5};
    spec.trials = 3;
    spec.seed_base = 9;
    spec.algorithms = {Algorithm::Derlpso, Algorithm::Rllpso};
    spec.config = default_run_config(Equation::Lorenz);
    spec.config.swarm.max_iterations = 8;
    spec.max_iterations_overridden = true;

    spec.jobs = 1;
    const auto serial = run_benchmark(spec);
    spec.jobs = 4;
    const auto parallel = run_benchmark(spec);

    REQUIRE(serial.size() == 2);
    REQUIRE(parallel.size() == 2);
    for (size_t c = 0; c < serial.size(); ++c) {
        for (int t = 0; t < spec.trials; ++t) {
            CHECK(serial[c].trials[size_t(t)].best_params ==
                  parallel[c].trials[size_t(t)].best_params);
            CHECK(serial[c].trials[size_t(t)].best_loss ==
                  parallel[c].trials[size_t(t)].best_loss);
        }
    }
    // Paired runs: same problem and estimation seeds for both algorithms.
    for (int t = 0; t < spec.trials; ++t) {
        CHECK(serial[0].trials[size_t(t)].problem_seed == serial[1].trials[size_t(t)].problem_seed);
        CHECK(serial[0].trials[size_t(t)].estimation_seed ==
              serial[1].trials[size_t(t)].estimation_seed);
        CHECK(serial[0].trials[size_t(t)].true_params == serial[1].trials[size_t(t)].true_params);
    }
}

TEST_CASE("cell summaries follow the single-sample SD convention") {
    CellResult cell;
    cell.equation = Equation::Heat;
    cell.points = 10;
    cell.algorithm = Algorithm::Derlpso;
    TrialOutcome t;
    t.ok = true;
    t.sq_errors = {4.0};
    t.aggregate_mse = 4.0;
    cell.trials = {t};
    const io::SummaryRow row = summarize_cell(cell);
    CHECK(row.trials == 1);
    CHECK(row.param_mse == std::vector<double>{4.0});
    CHECK(row.param_sd == std::vector<double>{0.0});
    CHECK(row.sd_mse == 0.0);
}

TEST_CASE("benchmark spec json parsing") {
    const BenchmarkSpec spec = benchmark_spec_from_json(io::json::parse(R"({
        "equation": "helmholtz",
        "points": [10, 20],
        "trials": 4,
        "seed_base": 11,
        "algorithms": "both",
        "jobs": 2,
        "config": {"max_iterations": 12}
    })"));
    CHECK(spec.equation == Equation::Helmholtz);
    CHECK(spec.points == std::vector<int>{10, 20});
    CHECK(spec.trials == 4);
    CHECK(spec.algorithms.size() == 2);
    CHECK(spec.config.swarm.max_iterations == 12);
    CHECK(spec.max_iterations_overridden);

    CHECK_THROWS_AS(benchmark_spec_from_json(io::json::parse(R"({"equation":"nope"})")),
                    std::runtime_error);
}

TEST_CASE("atomic writes land with the full contents") {
    const auto dir = std::filesystem::temp_directory_path() / "derlpso_io_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "a" / "b.txt";
    io::write_text_atomic(path, "hello\n");
    CHECK(io::read_text(path) == "hello\n");
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove_all(dir);
}
