#include <gtest/gtest.h>

#include <random>

#include "monogenic/io.hpp"
#include "monogenic/random.hpp"

using namespace monogenic;

namespace {

using Q = Rational;

}  // namespace

TEST(Io, ExactSeriesRoundTripIsByteIdentical) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(3, 4, rng);
    const std::string text = emit_series(f);
    const auto g = series_from_json<Q>(parse_json(text));
    EXPECT_EQ(g, f);
    EXPECT_EQ(emit_series(g), text);
  }
}

TEST(Io, FloatSeriesRoundTripIsExact) {
  std::mt19937_64 rng(42);
  const auto f = random_series(2, 4, rng).to_float();
  const std::string text = emit_series(f);
  EXPECT_EQ(series_from_json<double>(parse_json(text)), f);
  EXPECT_EQ(emit_series(series_from_json<double>(parse_json(text))), text);
}

TEST(Io, OperatorAndTableRoundTrips) {
  std::mt19937_64 rng(43);
  const auto p = random_operator(2, 3, 2, rng);
  const std::string op_text = emit_operator(p);
  EXPECT_EQ(emit_operator(operator_from_json<Q>(parse_json(op_text))), op_text);
  const auto h = random_hom_table(2, 3, 2, rng);
  const std::string h_text = emit_hom_table(h);
  EXPECT_EQ(hom_table_from_json<Q>(parse_json(h_text)), h);
  EXPECT_EQ(emit_hom_table(hom_table_from_json<Q>(parse_json(h_text))), h_text);
}

TEST(Io, ExactScalarsAreAlwaysFractions) {
  auto c = CliffordNumber<Q>::scalar(2, Q(3));
  c.at(0b11) = Q(-1, 2);
  EXPECT_EQ(emit_clifford(c), "{\"\": \"3/1\", \"12\": \"-1/2\"}");
  const Json j = parse_json("{\"\": 2, \"1\": \"4/6\"}");
  const auto back = clifford_from_json<Q>(j, 2);
  EXPECT_EQ(back[0], Q(2));
  EXPECT_EQ(back[1], Q(2, 3));
}

TEST(Io, MalformedJsonReportsLine) {
  const std::string text = "{\n  \"n\": 2,\n  \"degree\": 1\n  \"mode\": \"exact\"\n}";
  try {
    parse_json(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Io, RejectsStructuralErrors) {
  const auto doc = [](const std::string& coeffs, const std::string& mode = "exact") {
    return parse_json("{\"n\": 2, \"degree\": 1, \"mode\": \"" + mode + "\", \"coeffs\": [" + coeffs + "]}");
  };
  EXPECT_THROW(series_from_json<Q>(doc("{\"m\": [2, 0], \"value\": {\"\": 1}}")), ParseError);
  EXPECT_THROW(series_from_json<Q>(doc("{\"m\": [1], \"value\": {\"\": 1}}")), std::exception);
  EXPECT_THROW(series_from_json<Q>(doc("{\"m\": [1, 0], \"value\": {\"\": 0.5}}")), ParseError);
  EXPECT_THROW(series_from_json<Q>(doc("{\"m\": [1, 0], \"value\": {\"\": 1}}", "float")), ParseError);
  EXPECT_THROW(series_from_json<Q>(doc("{\"m\": [1, 0], \"value\": {\"3\": 1}}")), std::exception);
  EXPECT_THROW(series_from_json<Q>(doc("{\"m\": [1, 0], \"value\": {\"\": \"1/0\"}}")), ParseError);
  EXPECT_THROW(
      series_from_json<Q>(doc("{\"m\": [1, 0], \"value\": {\"\": 1}}, {\"m\": [1, 0], \"value\": {\"\": 2}}")),
      ParseError);
  EXPECT_THROW(series_from_json<Q>(parse_json("{\"n\": 12, \"degree\": 0, \"mode\": \"exact\", \"coeffs\": []}")),
               DimensionError);
}

TEST(Io, NormsAndProximateOrders) {
  const auto t = axis_family(2, 1.0, 1.0, 10);
  const auto back = norms_from_json(parse_json(emit_norms(t)));
  EXPECT_EQ(back.n, 2);
  EXPECT_EQ(back.log_norm, t.log_norm);
  const auto po = ProximateOrder::loglog(1.0, 1.0);
  EXPECT_EQ(proximate_order_from_json(parse_json(emit_proximate_order(po))).describe(), po.describe());
}

TEST(Io, JsonNumbersClampNonFinite) {
  EXPECT_EQ(std::stod(json_number(std::numeric_limits<double>::infinity())), 1e300);
  EXPECT_EQ(std::stod(json_number(-std::numeric_limits<double>::infinity())), -1e300);
  EXPECT_EQ(json_number(0.1), "0.10000000000000001");
}

TEST(Io, GrowthCsvHeader) {
  const auto t = axis_family(2, 1.0, 1.0, 30);
  const auto rep = growth_report(t, kq_table(t), ProximateOrder::constant(1.0), {10, 20}, 1.0);
  const std::string csv = growth_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "q,ln_Kq_lower,ln_Kq_upper,ln_Gq,kq_rhs,membership_value");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  EXPECT_NO_THROW(parse_json(growth_summary_json(rep)));
}
