#include <amerta/errors.hpp>
#include <amerta/instance_io.hpp>
#include <amerta/simulator.hpp>
#include <amerta/solution_io.hpp>

#include <doctest.h>

#include <json.hpp>

using namespace amerta;

TEST_CASE("instance JSON round trip is lossless") {
    GeneratorSpec spec;
    spec.task_count = 25;
    spec.seed = 9;
    spec.distance_mode = DistanceMode::euclidean;
    spec.depot_mode = DepotMode::corner;
    const Instance inst = generate_instance(spec);
    for (bool embed : {false, true}) {
        const std::string text = instance_to_json(inst, {embed});
        const Instance back = instance_from_json(text);
        CHECK(back == inst);
        CHECK(instance_to_json(back, {embed}) == text);
    }
}

TEST_CASE("instance JSON schema errors") {
    CHECK_THROWS_AS(instance_from_json("{"), ConfigError);
    CHECK_THROWS_AS(instance_from_json("{}"), ConfigError);

    GeneratorSpec spec;
    spec.task_count = 3;
    auto doc = nlohmann::json::parse(instance_to_json(generate_instance(spec), {true}));
    doc["distances"][1] = 999.0;
    CHECK_THROWS_AS(instance_from_json(doc.dump()), ConfigError);
    doc["distances"] = "nonsense";
    CHECK_THROWS_AS(instance_from_json(doc.dump()), ConfigError);
    doc["distances"] = std::vector<double>(3, 0.0);
    CHECK_THROWS_AS(instance_from_json(doc.dump()), ConfigError);
}

TEST_CASE("solution JSON: single and wrapped documents") {
    GeneratorSpec spec;
    spec.task_count = 6;
    const Instance inst = generate_instance(spec);
    Solution s = layers_from_global({{1, 2, 0, 3, -1, 4, 5, 6}}, inst);
    evaluate_solution(s, inst);

    const auto single = solutions_from_json(solution_to_json(s), inst);
    REQUIRE(single.size() == 1);
    CHECK(global_from_layers(single[0]) == global_from_layers(s));

    const std::vector<Solution> two{s, s};
    const auto wrapped = solutions_from_json(solutions_to_json(two), inst);
    CHECK(wrapped.size() == 2);

    const auto doc = nlohmann::json::parse(solution_to_json(s));
    CHECK(doc.at("objectives").at("E_total_kJ").get<double>() == s.objectives.energy);
    CHECK(doc.at("robots").size() == 2);
    CHECK(doc.at("robots").at(0).at("executed").front() == 0);

    CHECK_THROWS_AS(solutions_from_json("[1,2", inst), ConfigError);
    CHECK_THROWS_AS(solutions_from_json(R"({"global_seq":[1,1,-1]})", inst), EncodingError);
}
