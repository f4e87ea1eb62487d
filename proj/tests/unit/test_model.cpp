#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "lsv/model.hpp"
#include "lsv/model_json.hpp"

using namespace lsv;

TEST(Model, Table1Model) {
    LsvModel m = table1_model(-0.7);
    EXPECT_NO_THROW(m.validate());
    EXPECT_DOUBLE_EQ(m.rho, -0.7);
    EXPECT_DOUBLE_EQ(m.v0, 0.1);
    EXPECT_DOUBLE_EQ(m.vol_of_vol.sigma, 2.0);
}

TEST(Model, ValidateRejectsBadState) {
    LsvModel m = table1_model(0.0);
    m.rho = 1.2;
    EXPECT_THROW(m.validate(), std::invalid_argument);
    m = table1_model(0.0);
    m.v0 = 0.0;
    EXPECT_THROW(m.validate(), std::invalid_argument);
    m = table1_model(0.0);
    m.vol_of_vol.sigma = -1.0;
    EXPECT_THROW(m.validate(), std::invalid_argument);
    m = table1_model(0.0);
    m.vol_of_vol.drift = MeanRevertingDrift{0.0, 0.04};
    EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(VixSpot, Examples) {
    EXPECT_NEAR(vix_spot(table1_model(0.0)), std::sqrt(0.1), 1e-15);
    LsvModel m;
    m.v0 = 1.0;
    EXPECT_DOUBLE_EQ(vix_spot(m), 1.0);
    m.local_vol = TanhLocalVol{1.0, -0.5, 0.5};
    m.v0 = 0.04;
    EXPECT_NEAR(vix_spot(m), (1.0 - 0.5 * std::tanh(-0.5)) * 0.2, 1e-15);
    EXPECT_NEAR(vix_spot(m), 0.24622, 1e-5);
}

TEST(VixSpot, EqualsEtaTimesRootV0) {
    LsvModel m = table1_model(0.3);
    m.local_vol = TanhLocalVol{1.1, 0.3, -0.2};
    EXPECT_EQ(vix_spot(m), eta_eval(m.local_vol, m.s0, m.s0) * std::sqrt(m.v0));
}

TEST(MomentCondition, Examples) {
    EXPECT_TRUE(check_moment_condition(-0.9, 2.0));
    EXPECT_FALSE(check_moment_condition(0.0, 2.0));
    EXPECT_TRUE(check_moment_condition(-0.87, 4.0));
    EXPECT_FALSE(check_moment_condition(-0.86, 4.0));
    EXPECT_THROW(check_moment_condition(-0.9, 1.0), std::invalid_argument);
}

TEST(ModelJson, RoundTrip) {
    LsvModel m = table1_model(0.7);
    m.r = 0.03;
    m.q = 0.01;
    m.vol_of_vol.drift = MeanRevertingDrift{2.0, 0.05};
    LsvModel back = model_from_json(model_to_json(m));
    EXPECT_EQ(model_to_json(back), model_to_json(m));
}

TEST(ModelJson, ParsesAllKinds) {
    auto doc = nlohmann::json::parse(R"({
      "s0": 100, "v0": 0.04, "rho": -0.5,
      "local_vol": {"kind": "taylor_log", "eta": [1.0, -0.2]},
      "vol_of_vol": {"kind": "square_root", "sigma": 0.5, "drift": {"kind": "constant", "mu": 0.1}}})");
    LsvModel m = model_from_json(doc);
    ASSERT_TRUE(std::holds_alternative<TaylorLogLocalVol>(m.local_vol));
    EXPECT_DOUBLE_EQ(std::get<TaylorLogLocalVol>(m.local_vol).eta[1], -0.2);
    EXPECT_DOUBLE_EQ(std::get<TaylorLogLocalVol>(m.local_vol).eta[3], 0.0);
    EXPECT_EQ(m.vol_of_vol.kind, VolOfVolKind::SquareRoot);
    EXPECT_DOUBLE_EQ(std::get<ConstantDrift>(m.vol_of_vol.drift).mu, 0.1);
    EXPECT_DOUBLE_EQ(m.r, 0.0);
}

TEST(ModelJson, RejectsMalformed) {
    EXPECT_THROW(model_from_json(nlohmann::json::parse(R"({"v0": 0.1})")), std::invalid_argument);
    EXPECT_THROW(model_from_json(nlohmann::json::parse(
                     R"({"s0":1,"v0":0.1,"local_vol":{"kind":"spline"},"vol_of_vol":{"kind":"lognormal","sigma":1}})")),
                 std::invalid_argument);
    EXPECT_THROW(model_from_json(nlohmann::json::parse(
                     R"({"s0":1,"v0":"x","local_vol":{"kind":"constant"},"vol_of_vol":{"kind":"lognormal","sigma":1}})")),
                 std::invalid_argument);
    EXPECT_THROW(load_model_file("/nonexistent/model.json"), std::runtime_error);
}
