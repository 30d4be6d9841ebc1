#include "doctest.h"
#include "helpers.hpp"

#include <nlohmann/json.hpp>

#include "spincover/json_io.hpp"

using namespace spincover;
using namespace testutil;
using nlohmann::json;

TEST_CASE("multivector JSON round trip is exact") {
    std::mt19937_64 rng(51);
    for (const Field field : {Field::real, Field::complex})
        for (int trial = 0; trial < 25; ++trial) {
            const Signature sig(2, 2, field);
            const Multivector u = random_multivector(sig, rng);
            const json j = multivector_to_json(u);
            const Multivector v = multivector_from_json(json::parse(j.dump()));
            CHECK(u == v);  // shortest round-trip floats reparse bit-exactly
        }
}

TEST_CASE("multivector JSON shape") {
    const Signature sig(1, 1);
    const Multivector u = add(Multivector::scalar(sig, 1.5),
                              Multivector::basis_vector(sig, 2));
    const json j = multivector_to_json(u);
    CHECK(j["p"] == 1);
    CHECK(j["q"] == 1);
    CHECK(j["field"] == "real");
    CHECK(j["terms"][0]["index"] == json::array());
    CHECK_FALSE(j["terms"][0].contains("im"));
    CHECK(j["terms"][1]["index"] == json::array({2}));
}

TEST_CASE("multivector JSON rejects malformed documents") {
    CHECK_THROWS_AS(multivector_from_json(json::parse(R"({"p":1,"q":0})")), InputError);
    CHECK_THROWS_AS(
        multivector_from_json(json::parse(
            R"({"p":1,"q":0,"field":"real","terms":[{"index":[2],"re":1.0}]})")),
        InputError);
    CHECK_THROWS_AS(
        multivector_from_json(json::parse(
            R"({"p":2,"q":0,"field":"real","terms":[{"index":[2,1],"re":1.0}]})")),
        InputError);
    CHECK_THROWS_AS(
        multivector_from_json(json::parse(
            R"({"p":1,"q":0,"field":"real","terms":[{"index":[1],"re":1.0,"im":2.0}]})")),
        InputError);
    CHECK_THROWS_AS(
        multivector_from_json(json::parse(
            R"({"p":1,"q":0,"field":"real","terms":[{"index":[1],"re":1.0},{"index":[1],"re":2.0}]})")),
        InputError);
    CHECK_THROWS_AS(
        multivector_from_json(json::parse(R"({"p":9,"q":9,"field":"real","terms":[]})")),
        InputError);
}

TEST_CASE("orthogonal matrix JSON") {
    const json j = json::parse(R"({"p":1,"q":1,"matrix":[[-1,0],[0,1]]})");
    const OrthogonalMatrix m = orthogonal_from_json(j);
    CHECK(m.entries()(0, 0) == -1.0);
    const json back = orthogonal_to_json(m);
    CHECK(orthogonal_from_json(json::parse(back.dump())).entries() == m.entries());

    CHECK_THROWS_AS(orthogonal_from_json(json::parse(R"({"p":1,"q":1,"matrix":[[1,1],[0,1]]})")),
                    InputError);
    CHECK_THROWS_AS(orthogonal_from_json(json::parse(R"({"p":1,"q":1,"matrix":[[1,0]]})")),
                    InputError);
}

TEST_CASE("dense matrix JSON") {
    DenseMatrix m(2, 2);
    m << Coeff{1.0, 0.5}, Coeff{0.0, -1.0}, Coeff{2.0, 0.0}, Coeff{0.0, 0.0};
    const json j = dense_to_json(m, true);
    CHECK(j["order"] == 2);
    const DenseMatrix back = dense_from_json(json::parse(j.dump()));
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(dense_from_json(json::parse(R"({"order":2,"rows":[]})")), InputError);
}

TEST_CASE("lift result JSON embeds the multivector") {
    const Signature sig(1, 1);
    Eigen::MatrixXd t(2, 2);
    t << -1, 0, 0, 1;
    const LiftResult res = lift(OrthogonalMatrix(sig, t));
    const json j = lift_result_to_json(res);
    CHECK(j["norm_type"] == "+e");
    CHECK(j["component"] == "Pin_down_prime");
    CHECK(j["matrix_component"] == "O_down_prime");
    CHECK(j["groups"].is_array());
    const Multivector back = multivector_from_json(j["T_plus"]);
    CHECK(back == res.T_plus);
}
