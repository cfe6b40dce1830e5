#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pdd/market_data.hpp"
#include "test_util.hpp"

using namespace pdd;

TEST_CASE("parses the sample dataset row") {
    std::istringstream in(
        "Timestamp,Open,Low,High,Close,Trading Volume\n"
        "4/20/2018 1:00, 0.00012931, 0.00012914, 0.00012982, 0.00012933, "
        "24057\n");
    CandleSeries s = parse_candles(in, {"Lbank", "TKY/ETH"});
    REQUIRE(s.candles.size() == 1);
    const Candle& c = s.candles[0];
    CHECK(c.open == doctest::Approx(0.00012931).epsilon(1e-12));
    CHECK(c.low == doctest::Approx(0.00012914).epsilon(1e-12));
    CHECK(c.high == doctest::Approx(0.00012982).epsilon(1e-12));
    CHECK(c.close == doctest::Approx(0.00012933).epsilon(1e-12));
    CHECK(c.volume == doctest::Approx(24057).epsilon(1e-12));
    CHECK(format_timestamp(c.timestamp_min) == "2018-04-20 01:00");
    CHECK(s.exchange == "Lbank");
    CHECK(s.symbol_pair == "TKY/ETH");
}

TEST_CASE("columns matched by header name in any order, case-insensitive") {
    std::istringstream in(
        "close,TRADING VOLUME,timestamp,High,open,LOW\n"
        "2.5,99,2018-04-20 01:00,3,2,1\n");
    CandleSeries s = parse_candles(in, {});
    CHECK(s.candles[0].close == 2.5);
    CHECK(s.candles[0].volume == 99);
    CHECK(s.candles[0].high == 3);
    CHECK(s.candles[0].open == 2);
    CHECK(s.candles[0].low == 1);
}

TEST_CASE("header-only file is an empty series") {
    std::istringstream in("Timestamp,Open,Low,High,Close,Trading Volume\n");
    CHECK_THROWS_WITH_AS(parse_candles(in, {}), "empty series", DataError);
}

TEST_CASE("malformed rows name the row index") {
    std::istringstream bad_number(
        "Timestamp,Open,Low,High,Close,Trading Volume\n"
        "4/20/2018 1:00,1,1,1,1,100\n"
        "4/20/2018 2:00,oops,1,1,1,100\n");
    CHECK_THROWS_WITH_AS(parse_candles(bad_number, {}),
                         "row 2: unparseable open 'oops'", DataError);

    std::istringstream short_row(
        "Timestamp,Open,Low,High,Close,Trading Volume\n"
        "4/20/2018 1:00,1,1,1\n");
    CHECK_THROWS_AS(parse_candles(short_row, {}), DataError);
}

TEST_CASE("high < low parses but fails validation") {
    std::istringstream in(
        "Timestamp,Open,Low,High,Close,Trading Volume\n"
        "4/20/2018 1:00,5,6,4,5,100\n");
    CandleSeries s = parse_candles(in, {});
    REQUIRE(s.candles.size() == 1);
    auto violations = validate_series(s);
    CHECK(!violations.empty());
}

TEST_CASE("validate_series accepts well-formed ascending candles") {
    CandleSeries s = testutil::make_flat_series(3);
    CHECK(validate_series(s).empty());
    // idempotent: accepting once means accepting again
    CHECK(validate_series(s).empty());
}

TEST_CASE("validate_series reports duplicate timestamps and negative volume") {
    CandleSeries s = testutil::make_flat_series(3);
    s.candles[1].timestamp_min = s.candles[0].timestamp_min;
    auto violations = validate_series(s);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].index == 1);
    CHECK(violations[0].message.find("non-increasing timestamp") !=
          std::string::npos);

    CandleSeries t = testutil::make_flat_series(3);
    t.candles[2].volume = -1;
    violations = validate_series(t);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].index == 2);
    CHECK(violations[0].message == "negative volume");
}

TEST_CASE("serialize/parse round-trip preserves values") {
    CandleSeries s = testutil::make_flat_series(50);
    std::stringstream buf;
    serialize_candles(s, buf);
    CandleSeries back = parse_candles(buf, {s.exchange, s.symbol_pair});
    REQUIRE(back.candles.size() == s.candles.size());
    for (std::size_t i = 0; i < s.candles.size(); ++i) {
        CHECK(back.candles[i].timestamp_min == s.candles[i].timestamp_min);
        CHECK(back.candles[i].open ==
              doctest::Approx(s.candles[i].open).epsilon(1e-12));
        CHECK(back.candles[i].close ==
              doctest::Approx(s.candles[i].close).epsilon(1e-12));
        CHECK(back.candles[i].volume ==
              doctest::Approx(s.candles[i].volume).epsilon(1e-12));
    }
}

TEST_CASE("both timestamp formats map to the same epoch minute") {
    CHECK(parse_timestamp("4/20/2018 1:00") ==
          parse_timestamp("2018-04-20 01:00"));
    CHECK(parse_timestamp("2018-04-20T01:00:30") ==
          parse_timestamp("2018-04-20 01:00"));
    CHECK_THROWS_AS(parse_timestamp("not a date"), DataError);
}

TEST_CASE("filename convention fills exchange and pair") {
    CandleSeries s = testutil::make_flat_series(5);
    const std::string path = "/tmp/Lbank_TKY-ETH.csv";
    {
        std::ofstream out(path);
        serialize_candles(s, out);
    }
    CandleSeries loaded = parse_candles_file(path);
    CHECK(loaded.exchange == "Lbank");
    CHECK(loaded.symbol_pair == "TKY/ETH");
    std::remove(path.c_str());
}
