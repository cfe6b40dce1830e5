#include "doctest.h"
#include "pdd/framing.hpp"
#include "test_util.hpp"

using namespace pdd;

TEST_CASE("exact division gives N/W frames") {
    CandleSeries s = testutil::make_flat_series(100);
    auto frames = extract_frames(s, 10);
    REQUIRE(frames.size() == 10);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        CHECK(frames[i].index == i);
        CHECK(frames[i].candles.size() == 10);
    }
}

TEST_CASE("trailing remainder is discarded") {
    CandleSeries s = testutil::make_flat_series(105);
    auto frames = extract_frames(s, 10);
    CHECK(frames.size() == 10);
    // concatenating the frames reproduces the first 100 candles exactly
    std::size_t k = 0;
    for (const Frame& f : frames)
        for (const Candle& c : f.candles)
            CHECK(c.timestamp_min == s.candles[k++].timestamp_min);
    CHECK(k == 100);
}

TEST_CASE("series shorter than one window errors") {
    CandleSeries s = testutil::make_flat_series(5);
    CHECK_THROWS_WITH_AS(extract_frames(s, 10),
                         "series shorter than one window", DataError);
}

TEST_CASE("flatten keeps candle-major order with all five features") {
    CandleSeries s = testutil::make_flat_series(2);
    Frame f{0, s.candles};
    FrameVector v = flatten_frame(f, FeatureSet::all());
    REQUIRE(v.values.size() == 10);
    const Candle& c0 = s.candles[0];
    const Candle& c1 = s.candles[1];
    CHECK(v.values[0] == c0.open);
    CHECK(v.values[1] == c0.low);
    CHECK(v.values[2] == c0.high);
    CHECK(v.values[3] == c0.close);
    CHECK(v.values[4] == c0.volume);
    CHECK(v.values[5] == c1.open);
    CHECK(v.values[9] == c1.volume);
}

TEST_CASE("W=1 close-only flatten is the close price") {
    CandleSeries s = testutil::make_flat_series(1);
    Frame f{0, s.candles};
    FeatureSet close_only = FeatureSet::parse("close");
    FrameVector v = flatten_frame(f, close_only);
    REQUIRE(v.values.size() == 1);
    CHECK(v.values[0] == s.candles[0].close);
}

TEST_CASE("close+volume flatten matches a hand-built vector") {
    Frame f;
    f.index = 7;
    for (int i = 0; i < 3; ++i) {
        Candle c;
        c.timestamp_min = i;
        c.open = 10 + i;
        c.low = 9 + i;
        c.high = 11 + i;
        c.close = 10.5 + i;
        c.volume = 100 * (i + 1);
        f.candles.push_back(c);
    }
    FrameVector v = flatten_frame(f, FeatureSet::parse("close,volume"));
    CHECK(v.frame_index == 7);
    const std::vector<double> expected = {10.5, 100, 11.5, 200, 12.5, 300};
    CHECK(v.values == expected);
}

TEST_CASE("feature parsing rejects junk and empties") {
    CHECK_THROWS_AS(FeatureSet::parse("hurp"), DataError);
    CHECK_THROWS_AS(FeatureSet::parse(""), DataError);
    CHECK(FeatureSet::parse("volume,open").to_string() == "open,volume");
}

TEST_CASE("flatten is injective for distinct frames") {
    CandleSeries s = testutil::make_flat_series(40, 100.0, 1000.0, 7);
    auto frames = extract_frames(s, 10);
    std::vector<FrameVector> vs;
    for (const Frame& f : frames) vs.push_back(flatten_frame(f, {}));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            CHECK(vs[i].values != vs[j].values);
}

TEST_CASE("zscore_series standardizes each column") {
    CandleSeries s = testutil::make_flat_series(200);
    CandleSeries z = zscore_series(s);
    double mean = 0, var = 0;
    for (const Candle& c : z.candles) mean += c.close;
    mean /= double(z.candles.size());
    for (const Candle& c : z.candles) var += (c.close - mean) * (c.close - mean);
    var /= double(z.candles.size() - 1);
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
}
