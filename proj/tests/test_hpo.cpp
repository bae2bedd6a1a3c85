#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gego/hpo.hpp"
#include "gego/rng.hpp"

using namespace gego;

namespace {

Vector sample_in(const SearchSpace& space, SubStream& rng) {
    Vector x(space.dims());
    for (Eigen::Index j = 0; j < space.dims(); ++j)
        x[j] = rng.uniform(space.lower[j], space.upper[j]);
    return x;
}

bool config_is_valid(const AnnConfig& c) {
    static const int mins[4] = {128, 64, 32, 16};
    if (c.layers.empty() || c.layers.size() > 4) return false;
    for (std::size_t l = 0; l < c.layers.size(); ++l) {
        if (c.layers[l].neurons < mins[l] || c.layers[l].neurons > 512) return false;
        if (c.layers[l].neurons < 10) return false;
        const double d = c.layers[l].dropout;
        if (d != 0.0 && d != 0.1 && d != 0.5) return false;
    }
    if (c.batch_size % 32 != 0 || c.batch_size < 32 || c.batch_size > 256) return false;
    if (c.learning_rate < 1e-4 || c.learning_rate > 1e-2) return false;
    return true;
}

}  // namespace

TEST_CASE("decode endpoints") {
    Vector v(10);
    v << 378.2, 0.4, 191.9, 1.2, 220.0, 0.0, 106.5, 0.9, 6.3, -2.0;
    const AnnConfig c = decode_config(v);
    REQUIRE(c.layers.size() == 4);
    CHECK(c.layers[0].neurons == 378);
    CHECK(c.layers[1].neurons == 191);
    CHECK(c.layers[2].neurons == 220);
    CHECK(c.layers[3].neurons == 106);
    CHECK(c.layers[0].dropout == 0.0);
    CHECK(c.layers[1].dropout == 0.1);
    CHECK(c.layers[2].dropout == 0.0);
    CHECK(c.layers[3].dropout == 0.0);
    CHECK(c.batch_size == 224);  // floor(6.3) -> index 6
    CHECK(c.learning_rate == 1e-2);
}

TEST_CASE("decode clamps into the admissible ranges") {
    Vector v(10);
    v << 9000.0, 5.0, 64.0, -1.0, 32.0, 2.9, 16.0, 0.0, 7.99, -4.0;
    const AnnConfig c = decode_config(v);
    REQUIRE(c.layers.size() == 4);
    CHECK(c.layers[0].neurons == 512);  // clamped down
    CHECK(c.layers[0].dropout == 0.5);  // index clamped to 2
    CHECK(c.layers[1].dropout == 0.0);  // index clamped to 0
    CHECK(c.layers[2].dropout == 0.5);
    CHECK(c.batch_size == 256);
    CHECK(c.learning_rate == doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("decode truncates trailing layers below the output width") {
    Vector v(10);
    v << 300.0, 0.0, 200.0, 1.0, 5.0, 0.0, 400.0, 0.0, 0.0, -3.0;
    const AnnConfig c = decode_config(v);  // layer 3 raw-floors to 5 < 10
    REQUIRE(c.layers.size() == 2);
    CHECK(c.layers[0].neurons == 300);
    CHECK(c.layers[1].neurons == 200);

    Vector v2(10);
    v2 << 300.0, 0.0, 9.9, 0.0, 100.0, 0.0, 100.0, 0.0, 0.0, -3.0;
    CHECK(decode_config(v2).layers.size() == 1);  // layer 2 truncates immediately

    Vector v3(10);
    v3 << -50.0, 0.0, 200.0, 0.0, 200.0, 0.0, 200.0, 0.0, 0.0, -3.0;
    const AnnConfig c3 = decode_config(v3);  // first layer is immune to truncation
    REQUIRE(c3.layers.size() == 4);
    CHECK(c3.layers[0].neurons == 128);  // clamped up to its minimum

    CHECK_THROWS_AS(decode_config(Vector::Zero(9)), std::invalid_argument);
}

TEST_CASE("decoder totality over the encoding box") {
    const SearchSpace space = hpo_space();
    RngStream rng(19);
    for (int i = 0; i < 10000; ++i) {
        const AnnConfig c = decode_config(sample_in(space, rng.init()));
        if (!config_is_valid(c)) {
            CAPTURE(i);
            REQUIRE(config_is_valid(c));
        }
    }
}

TEST_CASE("batch decoding is monotone in the encoding") {
    Vector v(10);
    v << 300.0, 0.0, 200.0, 0.0, 100.0, 0.0, 50.0, 0.0, 0.0, -3.0;
    int previous = 0;
    for (double u = 0.0; u <= 8.0; u += 0.05) {
        v[8] = u;
        const int batch = decode_config(v).batch_size;
        CHECK(batch >= previous);
        previous = batch;
    }
    CHECK(previous == 256);
}

TEST_CASE("learning rate is log-decoded inside its range") {
    Vector v(10);
    v << 300.0, 0.0, 200.0, 0.0, 100.0, 0.0, 50.0, 0.0, 0.0, -3.0;
    v[9] = -2.0;
    CHECK(decode_config(v).learning_rate == 1e-2);
    v[9] = -4.0;
    CHECK(decode_config(v).learning_rate == doctest::Approx(1e-4).epsilon(1e-12));
    v[9] = -3.0;
    CHECK(decode_config(v).learning_rate == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("surrogate has its documented minimum") {
    const AnnConfig best = surrogate_optimum();
    CHECK(surrogate_fitness(best) == surrogate_minimum());

    // perturbations cost fitness
    AnnConfig worse = best;
    worse.batch_size = 256;
    CHECK(surrogate_fitness(worse) > surrogate_minimum());
    worse = best;
    worse.layers[0].dropout = 0.5;
    CHECK(surrogate_fitness(worse) > surrogate_minimum());
}

TEST_CASE("surrogate dominates a decoded grid") {
    const SearchSpace space = hpo_space();
    RngStream rng(23);
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
        const double v = surrogate_fitness(decode_config(sample_in(space, rng.init())));
        grid_min = std::min(grid_min, v);
    }
    CHECK(grid_min >= surrogate_minimum());
    CHECK(grid_min < 0.0);  // the bowl is reachable from the box
}

TEST_CASE("run_hpo returns valid decoded configs deterministically") {
    const HpoReport a = run_hpo(Algorithm::Gego, surrogate_fitness, 8, 10, 3, 5);
    const HpoReport b = run_hpo(Algorithm::Gego, surrogate_fitness, 8, 10, 3, 5);
    REQUIRE(a.trials.size() == 3);
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].best_fitness == b.trials[i].best_fitness);
        CHECK(config_is_valid(a.trials[i].best_config));
        CHECK(a.trials[i].seed == 5 + i);
    }
    CHECK(a.summary.mean == b.summary.mean);
    CHECK(hpo_report_to_string(a) == hpo_report_to_string(b));
}

TEST_CASE("geo and gego both produce usable hpo reports") {
    for (Algorithm algo : {Algorithm::Geo, Algorithm::Gego}) {
        const HpoReport report = run_hpo(algo, surrogate_fitness, 6, 8, 4, 9);
        REQUIRE(report.trials.size() == 4);
        for (const HpoTrial& trial : report.trials) {
            CHECK(config_is_valid(trial.best_config));
            CHECK(trial.best_fitness >= surrogate_minimum());
        }
    }
}

TEST_CASE("random_search_best is deterministic and budget-sensitive") {
    const SearchSpace space = hpo_space();
    const Objective objective = [](const Vector& x) { return surrogate_fitness(decode_config(x)); };
    const double a = random_search_best(space, objective, 100, 7);
    const double b = random_search_best(space, objective, 100, 7);
    CHECK(a == b);
    const double more = random_search_best(space, objective, 1000, 7);
    CHECK(more <= a);  // larger budget can only improve
}

// ---------------------------------------------------------------------------
// external endpoint protocol

namespace {

std::string stub_path() {
    const char* env = std::getenv("FITNESS_STUB_BIN");
    return env == nullptr ? std::string{} : std::string{env};
}

AnnConfig any_config() {
    Vector v(10);
    v << 300.0, 0.0, 200.0, 1.0, 100.0, 0.0, 50.0, 0.0, 3.0, -3.0;
    return decode_config(v);
}

}  // namespace

TEST_CASE("external endpoint passthrough") {
    const std::string stub = stub_path();
    if (stub.empty()) return;  // available only via ctest

    ExternalEvaluator endpoint(stub + " --fitness 0.0256", 30.0);
    CHECK(endpoint.evaluate(any_config()) == 0.0256);
    CHECK(endpoint.annotations().empty());
}

TEST_CASE("external endpoint faults become +infinity with annotations") {
    const std::string stub = stub_path();
    if (stub.empty()) return;

    SUBCASE("malformed replies") {
        ExternalEvaluator endpoint(stub + " --malformed", 30.0);
        CHECK(endpoint.evaluate(any_config()) == std::numeric_limits<double>::infinity());
        REQUIRE(endpoint.annotations().size() == 1);
        CHECK(endpoint.annotations()[0].find("malformed") != std::string::npos);
    }
    SUBCASE("mismatched ids") {
        ExternalEvaluator endpoint(stub + " --wrong-id", 30.0);
        CHECK(endpoint.evaluate(any_config()) == std::numeric_limits<double>::infinity());
        REQUIRE(endpoint.annotations().size() == 1);
        CHECK(endpoint.annotations()[0].find("id mismatch") != std::string::npos);
    }
    SUBCASE("timeouts") {
        ExternalEvaluator endpoint(stub + " --silent", 0.2);
        CHECK(endpoint.evaluate(any_config()) == std::numeric_limits<double>::infinity());
        REQUIRE(endpoint.annotations().size() == 1);
        CHECK(endpoint.annotations()[0].find("timeout") != std::string::npos);
    }
}

TEST_CASE("endpoint transcript: ids strictly increase, one reply per request") {
    const std::string stub = stub_path();
    if (stub.empty()) return;

    const auto dir = std::filesystem::temp_directory_path() / "gego_hpo_test";
    std::filesystem::create_directories(dir);
    const std::string log = (dir / "transcript.jsonl").string();
    std::filesystem::remove(log);

    {
        ExternalEvaluator endpoint(stub + " --score --log " + log, 30.0);
        const AnnConfig config = any_config();
        for (int i = 0; i < 100; ++i)
            CHECK(endpoint.evaluate(config) == surrogate_fitness(config));
        CHECK(endpoint.requests_sent() == 100);
        CHECK(endpoint.annotations().empty());
    }

    std::ifstream in(log);
    REQUIRE(in);
    std::string line;
    long long previous_id = 0;
    int requests = 0;
    while (std::getline(in, line)) {
        if (line.find("shutdown") != std::string::npos) continue;
        const auto pos = line.find("\"id\":");
        REQUIRE(pos != std::string::npos);
        const long long id = std::stoll(line.substr(pos + 5));
        CHECK(id > previous_id);
        previous_id = id;
        ++requests;
    }
    CHECK(requests == 100);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unlaunchable endpoints raise a run error") {
    CHECK_THROWS_AS(ExternalEvaluator("/definitely/not/a/real/binary-xyz", 5.0).evaluate(any_config()),
                    std::runtime_error);
}
