#pragma once

#include "amerta/encoding.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace amerta {

/// A point in normalised objective space (f1 = energy, f2 = makespan).
struct Point2 {
    double f1 = 0.0;
    double f2 = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Min-max scaling between an ideal and a nadir point. A degenerate axis
/// (nadir == ideal) is scaled by 1.
struct Normalization {
    Point2 ideal;
    Point2 nadir;

    Point2 apply(const ObjectiveVector& v) const noexcept;
    std::vector<Point2> apply(std::span<const ObjectiveVector> front) const;

    /// Bounds of every point in `fronts`; the nadir is pushed out by
    /// `inflate` times the range on each axis.
    static Normalization enclosing(std::span<const std::vector<ObjectiveVector>> fronts,
                                   double inflate = 0.0);
};

/// Mutually non-dominated subset, sorted by f1 then f2, exact duplicates removed.
std::vector<Point2> nondominated_points(std::span<const Point2> points);

struct ReferenceFront {
    std::vector<Point2> points;
    Normalization normalization;
    std::size_t sample_count = 0;
};

inline constexpr std::size_t kDefaultReferenceSamples = 500;

/// Union -> non-dominated filter -> normalise -> resample the piecewise-linear
/// front at `sample_count` points equally spaced by arc length.
/// Throws std::invalid_argument when every front is empty.
ReferenceFront build_reference_front(std::span<const std::vector<ObjectiveVector>> fronts,
                                     std::size_t sample_count = kDefaultReferenceSamples);

/// Mean over reference points of the dominance-aware distance to the closest
/// front point. Throws std::invalid_argument for an empty front or reference.
double igd_plus(std::span<const Point2> front, std::span<const Point2> reference);

/// Area dominated by `front` inside the box bounded by `ref`.
double hypervolume_2d(std::span<const Point2> front, Point2 ref = {1.0, 1.0});

} // namespace amerta
