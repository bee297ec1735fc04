#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace widthlab;

TEST(Instance, ParsesNumbersFractionsAndInfinity) {
  const auto q = parse_instance(R"({"N": 16, "n": 4, "q": "4", "kind": "gelfand",
                                    "balls": [{"p": 2, "nu": 1}, {"p": "inf", "nu": "1/2"}]})");
  EXPECT_EQ(q.dim(), 16u);
  EXPECT_EQ(q.n(), 4u);
  EXPECT_DOUBLE_EQ(q.q().value(), 4.0);
  EXPECT_TRUE(q.set()[1].p.is_infinite());
  EXPECT_DOUBLE_EQ(q.set()[1].nu, 0.5);
}

TEST(Instance, KindDefaultsToGelfand) {
  const auto q = parse_instance(R"({"N": 3, "n": 0, "q": 2, "balls": [{"p": "3/2", "nu": 1}]})");
  EXPECT_EQ(q.kind(), WidthKind::gelfand);
}

TEST(Instance, DiagnosticsNameTheField) {
  auto message = [](const char* text) {
    try {
      parse_instance(text);
    } catch (const parse_error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"N": 3, "n": 0, "q": 2, "balls": [{"p": 2, "nu": 0}]})").find("balls[0].nu"), std::string::npos);
  EXPECT_NE(message(R"({"N": 3, "n": 4, "q": 2, "balls": [{"p": 2, "nu": 1}]})").find("n:"), std::string::npos);
  EXPECT_NE(message(R"({"N": 3, "n": 0, "balls": [{"p": 2, "nu": 1}]})").find("q: missing"), std::string::npos);
  EXPECT_NE(message(R"({"N": 3, "n": 0, "q": 2, "balls": [{"p": "0.5", "nu": 1}]})").find("balls[0].p"),
            std::string::npos);
  EXPECT_NE(message("{\"N\": 3,\n \"n\": }").find("invalid JSON"), std::string::npos);
}

TEST(Sobolev, ParsesExactDecimals) {
  const auto inst = parse_sobolev_instance(R"({"d": 4, "q": 2, "layers": [{"r": 3, "p": 1.5}, {"r": 2, "p": 4}]})");
  EXPECT_EQ(inst.layers[0].p, parse_exact_exponent("3/2"));
}

TEST(Document, RealsUseTwelveDigits) {
  Json j;
  j["x"] = 0.051764955280199997;
  j["y"] = json_real(std::sqrt(2.0));
  j["z"] = json_real(std::numeric_limits<double>::infinity());
  j["list"] = Json::array({1, 2.5});
  EXPECT_EQ(dump_document(j),
            "{\n  \"x\": 0.0517649552802,\n  \"y\": 1.41421356237,\n  \"z\": \"inf\",\n  \"list\": [\n    1,\n    2.5\n  ]\n}\n");
}

TEST(Document, QueryRoundTrip) {
  const auto q = parse_instance(R"({"N": 5, "n": 1, "q": "inf", "balls": [{"p": 1, "nu": 2}]})");
  const auto back = parse_instance(to_json(q).dump());
  EXPECT_EQ(back.dim(), 5u);
  EXPECT_TRUE(back.q().is_infinite());
  EXPECT_DOUBLE_EQ(back.set()[0].nu, 2.0);
}
