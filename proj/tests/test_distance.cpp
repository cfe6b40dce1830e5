#include <cmath>
#include <random>

#include "doctest.h"
#include "pdd/distance.hpp"

using namespace pdd;

namespace {

std::vector<Point2D> make_points(const std::vector<std::pair<double, double>>& xy) {
    std::vector<Point2D> pts;
    for (std::size_t i = 0; i < xy.size(); ++i)
        pts.push_back({i, xy[i].first, xy[i].second});
    return pts;
}

}  // namespace

TEST_CASE("symmetric pair: centroid at origin, unit distances") {
    auto profile = distance_profile(make_points({{1, 0}, {-1, 0}}));
    CHECK(profile.centroid_x == 0.0);
    CHECK(profile.centroid_y == 0.0);
    REQUIRE(profile.distances.size() == 2);
    CHECK(profile.distances[0] == 1.0);
    CHECK(profile.distances[1] == 1.0);
}

TEST_CASE("single point has distance zero") {
    auto profile = distance_profile(make_points({{3.5, -2}}));
    REQUIRE(profile.distances.size() == 1);
    CHECK(profile.distances[0] == 0.0);
}

TEST_CASE("empty input errors") {
    CHECK_THROWS_AS(distance_profile({}), DataError);
}

TEST_CASE("random points match a direct norm recomputation") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-50, 50);
    std::vector<std::pair<double, double>> xy(20);
    for (auto& p : xy) p = {u(rng), u(rng)};
    auto profile = distance_profile(make_points(xy));

    double cx = 0, cy = 0;
    for (const auto& p : xy) {
        cx += p.first;
        cy += p.second;
    }
    cx /= 20;
    cy /= 20;
    for (std::size_t i = 0; i < xy.size(); ++i) {
        const double expected = std::sqrt((xy[i].first - cx) * (xy[i].first - cx) +
                                          (xy[i].second - cy) * (xy[i].second - cy));
        CHECK(profile.distances[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("worked histogram sequence splits at the first empty bin") {
    const std::vector<std::size_t> counts = {4, 10, 21, 4, 3, 0, 2, 0, 0, 0, 1,
                                             0, 0, 0,  0, 0, 0, 0, 0, 0, 0, 0,
                                             0, 0, 1,  0, 0, 1, 0, 0, 0, 1};
    auto split = find_split(counts);
    REQUIRE(split.has_value());
    CHECK(*split == 5);
    // dense region = counts before the split
    const std::vector<std::size_t> dense(counts.begin(), counts.begin() + 5);
    CHECK(dense == std::vector<std::size_t>({4, 10, 21, 4, 3}));
}

TEST_CASE("no empty bin leaves the split unset") {
    CHECK(!find_split({3, 2, 1}).has_value());
}

TEST_CASE("leading empty bins are skipped before looking for the split") {
    CHECK(find_split({0, 3, 0, 1}) == 2);
}

TEST_CASE("all points identical: one populated bin, split at 1") {
    auto profile = distance_profile(make_points({{5, 5}, {5, 5}, {5, 5}}));
    auto hist = build_histogram(profile, 8);
    CHECK(hist.counts[0] == 3);
    for (std::size_t i = 1; i < hist.counts.size(); ++i)
        CHECK(hist.counts[i] == 0);
    REQUIRE(hist.split_index.has_value());
    CHECK(*hist.split_index == 1);
}

TEST_CASE("hand-binned synthetic distances give threshold 1.8") {
    // distances {1, 1.1, 1.2, 9}, 10 bins over [0, 9], width 0.9:
    // the three small distances land in bin 1, 9 in the last bin; the first
    // empty bin after populated bin 1 is bin 2, left edge 1.8
    DistanceProfile profile;
    profile.distances = {1.0, 1.1, 1.2, 9.0};
    auto hist = build_histogram(profile, 10);
    CHECK(hist.bin_edges.back() == doctest::Approx(9.0));
    CHECK(hist.counts[1] == 3);
    CHECK(hist.counts[9] == 1);
    auto t = auto_threshold(hist);
    CHECK(t.value == doctest::Approx(1.8));
    CHECK(t.provenance == ThresholdProvenance::Automatic);
}

TEST_CASE("histogram counts always sum to the point count") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<double, double>> xy(50);
        for (auto& p : xy) p = {u(rng), u(rng)};
        auto profile = distance_profile(make_points(xy));
        auto hist = build_histogram(profile, 2 + std::size_t(trial));
        std::size_t total = 0;
        for (std::size_t c : hist.counts) total += c;
        CHECK(total == 50);
    }
}

TEST_CASE("auto_threshold errors without an empty bin") {
    DistanceProfile profile;
    profile.distances = {0.5, 1.5};  // 2 bins over [0, 1.5], both populated
    auto hist = build_histogram(profile, 2);
    CHECK(!hist.split_index.has_value());
    CHECK_THROWS_WITH_AS(
        auto_threshold(hist),
        "no empty bin; increase bin count or set threshold manually",
        DataError);
}

TEST_CASE("detection uses a strict inequality") {
    DistanceProfile profile;
    profile.distances = {1, 2, 3};
    CHECK(detect_distance(profile, {3.0, ThresholdProvenance::Manual}).empty());
    auto all = detect_distance(profile, {0.0, ThresholdProvenance::Manual});
    CHECK(all == std::vector<std::size_t>({0, 1, 2}));
}

TEST_CASE("detection is monotone in the threshold") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0, 100);
    DistanceProfile profile;
    for (int i = 0; i < 200; ++i) profile.distances.push_back(u(rng));
    std::size_t prev = profile.distances.size();
    for (double t = 0; t <= 100; t += 5) {
        auto flags = detect_distance(profile, {t, ThresholdProvenance::Manual});
        CHECK(flags.size() <= prev);
        prev = flags.size();
    }
}

TEST_CASE("automatic flag count equals the sparse-region mass") {
    std::mt19937 rng(23);
    std::normal_distribution<double> tight(0.0, 1.0);
    std::vector<std::pair<double, double>> xy;
    for (int i = 0; i < 120; ++i) xy.push_back({tight(rng), tight(rng)});
    xy.push_back({40, 0});
    xy.push_back({0, 55});
    xy.push_back({-48, 3});
    auto profile = distance_profile(make_points(xy));
    auto hist = build_histogram(profile, 32);
    auto t = auto_threshold(hist);
    auto flags = detect_distance(profile, t);
    std::size_t sparse_mass = 0;
    for (std::size_t i = *hist.split_index; i < hist.counts.size(); ++i)
        sparse_mass += hist.counts[i];
    CHECK(flags.size() == sparse_mass);
}

TEST_CASE("flags are invariant under global translation") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<std::pair<double, double>> xy(60);
    for (auto& p : xy) p = {u(rng), u(rng)};
    xy[7] = {200, -100};
    auto p1 = distance_profile(make_points(xy));
    for (auto& p : xy) {
        p.first += 1234.5;
        p.second -= 987.6;
    }
    auto p2 = distance_profile(make_points(xy));
    DistanceThreshold t{50, ThresholdProvenance::Manual};
    CHECK(detect_distance(p1, t) == detect_distance(p2, t));
}
