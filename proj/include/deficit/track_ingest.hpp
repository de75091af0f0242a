#ifndef DEFICIT_TRACK_INGEST_HPP
#define DEFICIT_TRACK_INGEST_HPP

#include "deficit/duration.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace deficit {

/// One GPS fix as recorded by a sports watch.
struct TrackPoint {
    double latitude = 0.0;   // degrees, [-90, 90]
    double longitude = 0.0;  // degrees, [-180, 180]
    double elevation = 0.0;  // meters
    double timestamp = 0.0;  // seconds since epoch
};

/// One course segment: a full kilometer, or the trailing partial one.
struct KmSplit {
    int index = 0;           // 1-based
    double length = 0.0;     // meters, (0, 1000]
    Deciseconds pace = 0;    // time to cover the segment
    double alt_delta = 0.0;  // meters, end elevation minus start elevation

    bool is_partial() const noexcept { return length < kFullSegmentLength; }

    static constexpr double kFullSegmentLength = 1000.0;

    friend bool operator==(const KmSplit&, const KmSplit&) = default;
};

enum class SegmentClass { Flat, Uphill, Downhill };

std::string_view to_string(SegmentClass c) noexcept;

/// Reads a splits CSV with header `index,length_m,pace,alt_delta_m`.
/// Indices must run 1..n in file order and only the last row may be shorter
/// than a full kilometer.
std::vector<KmSplit> parse_splits_csv(std::string_view bytes);

/// Reads a track CSV with header `lat,lon,ele_m,t_s`. Timestamps must be
/// strictly increasing.
std::vector<TrackPoint> parse_track_points(std::string_view bytes);

/// Mean Earth radius used for all distance computations.
inline constexpr double kEarthRadiusMeters = 6371008.8;

/// Great-circle distance in meters; elevation is ignored.
double haversine_distance(const TrackPoint& a, const TrackPoint& b) noexcept;

/// Cuts a track into consecutive segments of `segment_length` meters plus a
/// final remainder. Segment boundary times and elevations are interpolated
/// linearly along each leg. A remainder shorter than half a meter is folded
/// into the last full segment.
std::vector<KmSplit> aggregate_track(const std::vector<TrackPoint>& points,
                                     double segment_length = KmSplit::kFullSegmentLength);

/// Gradient class with the strict +/-1 m rule: |alt_delta| <= 1 is Flat.
SegmentClass classify_segment(double alt_delta);

} // namespace deficit

#endif // DEFICIT_TRACK_INGEST_HPP
