#include "deficit/track_ingest.hpp"

#include "csv.hpp"
#include "deficit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace deficit {

std::string_view to_string(SegmentClass c) noexcept {
    switch (c) {
    case SegmentClass::Flat: return "Flat";
    case SegmentClass::Uphill: return "Uphill";
    case SegmentClass::Downhill: return "Downhill";
    }
    return "Flat";
}

std::vector<KmSplit> parse_splits_csv(std::string_view bytes) {
    const auto rows = csv::read(bytes, "index,length_m,pace,alt_delta_m");
    std::vector<KmSplit> splits;
    splits.reserve(rows.size());

    for (const auto& row : rows) {
        KmSplit s;
        const auto index = csv::to_int(row.fields[0], row.number, "index");
        const auto expected = static_cast<std::int64_t>(splits.size()) + 1;
        if (index != expected) {
            const bool duplicate = index >= 1 && index < expected;
            throw ParseError(row.number, "index",
                             duplicate ? "duplicate index " + std::to_string(index)
                                       : "expected index " + std::to_string(expected) +
                                             ", found " + std::to_string(index));
        }
        s.index = static_cast<int>(index);

        s.length = csv::to_double(row.fields[1], row.number, "length_m");
        if (!(s.length > 0.0 && s.length <= KmSplit::kFullSegmentLength))
            throw ParseError(row.number, "length_m", "must be in (0, 1000]");

        try {
            s.pace = parse_duration(row.fields[2]);
        } catch (const ParseError& e) {
            throw ParseError(row.number, "pace", e.what());
        }
        if (s.pace <= 0) throw ParseError(row.number, "pace", "must be positive");

        s.alt_delta = csv::to_double(row.fields[3], row.number, "alt_delta_m");

        if (!splits.empty() && splits.back().is_partial())
            throw ParseError(row.number - 1, "length_m",
                             "partial segment is only allowed as the last row");
        splits.push_back(s);
    }
    return splits;
}

std::vector<TrackPoint> parse_track_points(std::string_view bytes) {
    const auto rows = csv::read(bytes, "lat,lon,ele_m,t_s");
    std::vector<TrackPoint> points;
    points.reserve(rows.size());

    for (const auto& row : rows) {
        TrackPoint p;
        p.latitude = csv::to_double(row.fields[0], row.number, "lat");
        p.longitude = csv::to_double(row.fields[1], row.number, "lon");
        p.elevation = csv::to_double(row.fields[2], row.number, "ele_m");
        p.timestamp = csv::to_double(row.fields[3], row.number, "t_s");
        if (p.latitude < -90.0 || p.latitude > 90.0)
            throw ParseError(row.number, "lat", "out of range [-90, 90]");
        if (p.longitude < -180.0 || p.longitude > 180.0)
            throw ParseError(row.number, "lon", "out of range [-180, 180]");
        if (!points.empty() && !(p.timestamp > points.back().timestamp))
            throw ParseError(row.number, "t_s", "timestamps must be strictly increasing");
        points.push_back(p);
    }
    return points;
}

double haversine_distance(const TrackPoint& a, const TrackPoint& b) noexcept {
    constexpr double deg = std::numbers::pi / 180.0;
    const double phi1 = a.latitude * deg;
    const double phi2 = b.latitude * deg;
    const double dphi = (b.latitude - a.latitude) * deg;
    const double dlambda = (b.longitude - a.longitude) * deg;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(std::min(1.0, h)));
}

namespace {

struct Position {
    double time;
    double elevation;
};

// Walks the cumulative-distance profile and interpolates at increasing
// distances. Zero-length legs never contain a boundary, so time spent
// standing still stays in the segment that was open when it happened.
class ProfileCursor {
public:
    ProfileCursor(const std::vector<TrackPoint>& pts, const std::vector<double>& cum)
        : pts_(pts), cum_(cum) {}

    Position at(double distance) {
        while (leg_ + 2 < cum_.size() && distance > cum_[leg_ + 1]) ++leg_;
        const auto& a = pts_[leg_];
        const auto& b = pts_[leg_ + 1];
        const double span = cum_[leg_ + 1] - cum_[leg_];
        const double f = span > 0.0 ? std::clamp((distance - cum_[leg_]) / span, 0.0, 1.0) : 1.0;
        return {a.timestamp + f * (b.timestamp - a.timestamp),
                a.elevation + f * (b.elevation - a.elevation)};
    }

private:
    const std::vector<TrackPoint>& pts_;
    const std::vector<double>& cum_;
    std::size_t leg_ = 0;
};

} // namespace

std::vector<KmSplit> aggregate_track(const std::vector<TrackPoint>& points, double segment_length) {
    if (points.size() < 2) throw ValidationError("aggregate_track: need at least 2 track points");
    if (!(segment_length > 0.0)) throw ValidationError("aggregate_track: segment length must be positive");

    std::vector<double> cum(points.size(), 0.0);
    for (std::size_t k = 1; k < points.size(); ++k)
        cum[k] = cum[k - 1] + haversine_distance(points[k - 1], points[k]);
    const double total = cum.back();
    if (!(total > 0.0)) throw ValidationError("aggregate_track: track has zero total distance");

    constexpr double fold_tolerance = 0.5;
    auto full = static_cast<std::size_t>(std::floor((total + fold_tolerance) / segment_length));
    const double remainder = total - static_cast<double>(full) * segment_length;
    const bool has_partial = full == 0 || remainder >= fold_tolerance;
    const std::size_t count = has_partial ? full + 1 : full;

    const TrackPoint& first = points.front();
    const TrackPoint& last = points.back();
    auto to_ds = [&](double t) {
        return static_cast<Deciseconds>(std::llround((t - first.timestamp) * 10.0));
    };

    ProfileCursor cursor(points, cum);
    std::vector<KmSplit> splits;
    splits.reserve(count);
    Position start{first.timestamp, first.elevation};
    Deciseconds start_ds = 0;

    for (std::size_t s = 0; s < count; ++s) {
        const bool is_last = s + 1 == count;
        const Position end = is_last ? Position{last.timestamp, last.elevation}
                                     : cursor.at(static_cast<double>(s + 1) * segment_length);
        const Deciseconds end_ds = to_ds(end.time);

        KmSplit split;
        split.index = static_cast<int>(s + 1);
        split.length = (is_last && has_partial) ? remainder : segment_length;
        split.pace = end_ds - start_ds;
        split.alt_delta = end.elevation - start.elevation;
        if (split.pace <= 0)
            throw ValidationError("aggregate_track: segment " + std::to_string(split.index) +
                                  " is shorter than the 0.1 s time resolution");
        splits.push_back(split);

        start = end;
        start_ds = end_ds;
    }
    return splits;
}

SegmentClass classify_segment(double alt_delta) {
    if (!std::isfinite(alt_delta)) throw ValidationError("classify_segment: altitude delta is not finite");
    if (alt_delta > 1.0) return SegmentClass::Uphill;
    if (alt_delta < -1.0) return SegmentClass::Downhill;
    return SegmentClass::Flat;
}

} // namespace deficit
