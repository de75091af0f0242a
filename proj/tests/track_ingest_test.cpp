#include "deficit/error.hpp"
#include "deficit/track_ingest.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace deficit {
namespace {

// Points along the equator: the great-circle distance between two of them is
// exactly R * delta_longitude, which gives an arithmetic oracle.
TrackPoint equator_point(double meters, double elevation, double t) {
    const double lon_deg = meters / kEarthRadiusMeters * 180.0 / std::numbers::pi;
    return {0.0, lon_deg, elevation, t};
}

TEST(Haversine, MatchesArcLengthOnEquatorAndMeridian) {
    const double one_degree = kEarthRadiusMeters * std::numbers::pi / 180.0;  // 111195.08 m
    EXPECT_NEAR(haversine_distance({0, 0, 0, 0}, {0, 1, 0, 1}), one_degree, 1e-6);
    EXPECT_NEAR(haversine_distance({10, 20, 0, 0}, {11, 20, 0, 1}), one_degree, 1e-6);
    EXPECT_NEAR(haversine_distance(equator_point(0, 0, 0), equator_point(1000, 0, 1)), 1000.0, 1e-6);
    // Elevation does not enter the distance.
    EXPECT_NEAR(haversine_distance({0, 0, 0, 0}, {0, 0, 500, 1}), 0.0, 1e-12);
}

TEST(AggregateTrack, SingleKilometer) {
    const auto splits = aggregate_track({equator_point(0, 50, 0), equator_point(1000, 50, 240)});
    ASSERT_EQ(splits.size(), 1u);
    EXPECT_EQ(splits[0].index, 1);
    EXPECT_DOUBLE_EQ(splits[0].length, 1000.0);
    EXPECT_EQ(splits[0].pace, 2400);
    EXPECT_DOUBLE_EQ(splits[0].alt_delta, 0.0);
}

TEST(AggregateTrack, ConstantSpeedInterpolation) {
    // 5 m/s: the 1000 m boundary is crossed at t = 200 s, elevation 10 m.
    const auto splits = aggregate_track(
        {equator_point(0, 0, 0), equator_point(600, 6, 120), equator_point(1200, 12, 240)});
    ASSERT_EQ(splits.size(), 2u);
    EXPECT_EQ(splits[0].pace, 2000);
    EXPECT_DOUBLE_EQ(splits[0].length, 1000.0);
    EXPECT_NEAR(splits[0].alt_delta, 10.0, 1e-6);
    EXPECT_EQ(splits[1].pace, 400);
    EXPECT_NEAR(splits[1].length, 200.0, 1e-6);
    EXPECT_NEAR(splits[1].alt_delta, 2.0, 1e-6);
    EXPECT_TRUE(splits[1].is_partial());
}

TEST(AggregateTrack, StandingStillAddsTimeNotDistance) {
    const auto splits = aggregate_track(
        {equator_point(0, 0, 0), equator_point(0, 0, 30), equator_point(1000, 0, 270)});
    ASSERT_EQ(splits.size(), 1u);
    EXPECT_EQ(splits[0].pace, 2700);
    EXPECT_DOUBLE_EQ(splits[0].length, 1000.0);
}

TEST(AggregateTrack, StandingAtBoundaryGoesToNextSegment) {
    const auto splits = aggregate_track({equator_point(0, 0, 0), equator_point(1000, 0, 200),
                                         equator_point(1000, 0, 230), equator_point(1200, 0, 270)});
    ASSERT_EQ(splits.size(), 2u);
    EXPECT_EQ(splits[0].pace, 2000);
    EXPECT_EQ(splits[1].pace, 700);
}

TEST(AggregateTrack, SubMeterRemainderIsFolded) {
    const auto splits = aggregate_track({equator_point(0, 0, 0), equator_point(2000.3, 0, 500)});
    ASSERT_EQ(splits.size(), 2u);
    EXPECT_EQ(splits[0].pace + splits[1].pace, 5000);
    EXPECT_FALSE(splits[1].is_partial());
}

TEST(AggregateTrack, ShortTrackIsOnePartialSegment) {
    const auto splits = aggregate_track({equator_point(0, 0, 0), equator_point(195, -2, 105.3)});
    ASSERT_EQ(splits.size(), 1u);
    EXPECT_NEAR(splits[0].length, 195.0, 1e-6);
    EXPECT_EQ(splits[0].pace, 1053);
    EXPECT_NEAR(splits[0].alt_delta, -2.0, 1e-9);
}

TEST(AggregateTrack, Errors) {
    EXPECT_THROW(aggregate_track({}), ValidationError);
    EXPECT_THROW(aggregate_track({equator_point(0, 0, 0)}), ValidationError);
    EXPECT_THROW(aggregate_track({equator_point(5, 0, 0), equator_point(5, 3, 10)}), ValidationError);
}

TEST(AggregateTrackProperty, LengthsAndTimesAddUp) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> step(0.0, 40.0), dt(1.0, 12.0), dz(-2.0, 2.0),
        heading(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<TrackPoint> pts{{46.67, 16.02, 200.0, 1.0e9}};
        double track_length = 0.0;
        const int n = 20 + trial * 5;
        for (int k = 0; k < n; ++k) {
            const auto& p = pts.back();
            const double d = (k % 17 == 3) ? 0.0 : step(gen);
            const double h = heading(gen);
            TrackPoint q{p.latitude + d * std::cos(h) / 111195.0,
                         p.longitude + d * std::sin(h) / 76400.0, p.elevation + dz(gen),
                         p.timestamp + dt(gen)};
            track_length += haversine_distance(p, q);
            pts.push_back(q);
        }
        if (track_length <= 0.0) continue;
        const auto splits = aggregate_track(pts);

        double length_sum = 0.0;
        Deciseconds pace_sum = 0;
        double alt_sum = 0.0;
        for (std::size_t j = 0; j < splits.size(); ++j) {
            EXPECT_EQ(splits[j].index, static_cast<int>(j + 1));
            EXPECT_GT(splits[j].pace, 0);
            if (j + 1 < splits.size()) EXPECT_DOUBLE_EQ(splits[j].length, 1000.0);
            length_sum += splits[j].length;
            pace_sum += splits[j].pace;
            alt_sum += splits[j].alt_delta;
        }
        EXPECT_NEAR(length_sum, track_length, 0.5);
        const double elapsed_ds = (pts.back().timestamp - pts.front().timestamp) * 10.0;
        EXPECT_LE(std::abs(static_cast<double>(pace_sum) - elapsed_ds),
                  static_cast<double>(splits.size()));
        EXPECT_NEAR(alt_sum, pts.back().elevation - pts.front().elevation, 1e-6);
    }
}

TEST(ParseSplitsCsv, Rows) {
    const auto splits = parse_splits_csv(
        "index,length_m,pace,alt_delta_m\n"
        "1,1000,04:03.80,2.0\n"
        "2,1000,04:05.40,-3.0\n"
        "3,195,01:45.30,-2.0\n");
    ASSERT_EQ(splits.size(), 3u);
    EXPECT_EQ(splits[1], (KmSplit{2, 1000.0, 2454, -3.0}));
    EXPECT_EQ(splits[2], (KmSplit{3, 195.0, 1053, -2.0}));
}

TEST(ParseSplitsCsv, CrLfAndEmptyData) {
    EXPECT_TRUE(parse_splits_csv("index,length_m,pace,alt_delta_m\n").empty());
    EXPECT_TRUE(parse_splits_csv("index,length_m,pace,alt_delta_m\r\n\r\n").empty());
    EXPECT_EQ(parse_splits_csv("index,length_m,pace,alt_delta_m\r\n1,1000,04:03.8,0\r\n").size(), 1u);
}

std::pair<std::size_t, std::string> splits_error(std::string_view body) {
    try {
        parse_splits_csv(std::string("index,length_m,pace,alt_delta_m\n") + std::string(body));
    } catch (const ParseError& e) {
        return {e.row(), e.field()};
    }
    return {0, "<no error>"};
}

TEST(ParseSplitsCsv, StructuredErrors) {
    using R = std::pair<std::size_t, std::string>;
    EXPECT_EQ(splits_error("1,1000,04:00.0,0\n1,1000,04:00.0,0\n"), (R{2, "index"}));
    EXPECT_EQ(splits_error("1,1000,04:00.0,0\n3,1000,04:00.0,0\n"), (R{2, "index"}));
    EXPECT_EQ(splits_error("1,500,02:00.0,0\n2,1000,04:00.0,0\n"), (R{1, "length_m"}));
    EXPECT_EQ(splits_error("1,1000,4m03s,0\n"), (R{1, "pace"}));
    EXPECT_EQ(splits_error("1,1000,00:00.0,0\n"), (R{1, "pace"}));
    EXPECT_EQ(splits_error("1,1200,04:00.0,0\n"), (R{1, "length_m"}));
    EXPECT_EQ(splits_error("1,0,04:00.0,0\n"), (R{1, "length_m"}));
    EXPECT_EQ(splits_error("1,1000,04:00.0,nan\n"), (R{1, "alt_delta_m"}));
    EXPECT_EQ(splits_error("1,1000,04:00.0\n"), (R{1, "row"}));
    EXPECT_THROW(parse_splits_csv("idx,len,pace,alt\n"), ParseError);
    EXPECT_THROW(parse_splits_csv(""), ParseError);
}

TEST(ParseSplitsCsvProperty, NonFinalPartialAlwaysRejected) {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = 2 + static_cast<int>(gen() % 10);
        const int partial_at = 1 + static_cast<int>(gen() % (rows - 1));  // never the last row
        std::string text = "index,length_m,pace,alt_delta_m\n";
        for (int r = 1; r <= rows; ++r) {
            const int length = r == partial_at ? 1 + static_cast<int>(gen() % 999) : 1000;
            text += std::to_string(r) + "," + std::to_string(length) + ",04:00.0,0\n";
        }
        try {
            parse_splits_csv(text);
            ADD_FAILURE() << "accepted partial row " << partial_at << " of " << rows;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.row(), static_cast<std::size_t>(partial_at));
        }
    }
}

TEST(ParseTrackPoints, Rows) {
    const auto pts = parse_track_points("lat,lon,ele_m,t_s\n46.67,16.02,203.5,0\n46.68,16.02,204.0,4.5\n");
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_DOUBLE_EQ(pts[1].timestamp, 4.5);
    EXPECT_DOUBLE_EQ(pts[0].elevation, 203.5);
    EXPECT_TRUE(parse_track_points("lat,lon,ele_m,t_s\n").empty());
}

TEST(ParseTrackPoints, Errors) {
    try {
        parse_track_points("lat,lon,ele_m,t_s\n0,0,0,5.0\n0,0,0,4.0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 2u);
        EXPECT_EQ(e.field(), "t_s");
    }
    EXPECT_THROW(parse_track_points("lat,lon,ele_m,t_s\n0,0,0,5.0\n0,0,0,5.0\n"), ParseError);
    EXPECT_THROW(parse_track_points("lat,lon,ele_m,t_s\n91,0,0,0\n"), ParseError);
    EXPECT_THROW(parse_track_points("lat,lon,ele_m,t_s\n0,-180.5,0,0\n"), ParseError);
}

TEST(ClassifySegment, Thresholds) {
    EXPECT_EQ(classify_segment(-3.0), SegmentClass::Downhill);
    EXPECT_EQ(classify_segment(0.0), SegmentClass::Flat);
    EXPECT_EQ(classify_segment(1.0), SegmentClass::Flat);
    EXPECT_EQ(classify_segment(-1.0), SegmentClass::Flat);
    EXPECT_EQ(classify_segment(1.0000001), SegmentClass::Uphill);
    EXPECT_THROW(classify_segment(std::nan("")), ValidationError);
    EXPECT_THROW(classify_segment(INFINITY), ValidationError);
    EXPECT_EQ(to_string(SegmentClass::Downhill), "Downhill");
}

TEST(ClassifySegmentProperty, SignFlipSwapsUphillAndDownhill) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> alt(-12.0, 12.0);
    for (int k = 0; k < 10000; ++k) {
        const double a = alt(gen);
        const auto c = classify_segment(a);
        const auto flipped = classify_segment(-a);
        if (std::abs(a) > 1.0) {
            EXPECT_NE(c, SegmentClass::Flat);
            EXPECT_NE(c, flipped);
            EXPECT_NE(flipped, SegmentClass::Flat);
        } else {
            EXPECT_EQ(c, SegmentClass::Flat);
            EXPECT_EQ(flipped, SegmentClass::Flat);
        }
    }
}

} // namespace
} // namespace deficit
