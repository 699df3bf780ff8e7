#include "amerta/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amerta {

Point2 Normalization::apply(const ObjectiveVector& v) const noexcept {
    const double r1 = nadir.f1 - ideal.f1;
    const double r2 = nadir.f2 - ideal.f2;
    return {(v.energy - ideal.f1) / (r1 > 0.0 ? r1 : 1.0),
            (v.makespan - ideal.f2) / (r2 > 0.0 ? r2 : 1.0)};
}

std::vector<Point2> Normalization::apply(std::span<const ObjectiveVector> front) const {
    std::vector<Point2> out;
    out.reserve(front.size());
    for (const auto& v : front) out.push_back(apply(v));
    return out;
}

Normalization Normalization::enclosing(std::span<const std::vector<ObjectiveVector>> fronts,
                                       double inflate) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Normalization n{{inf, inf}, {-inf, -inf}};
    for (const auto& front : fronts) {
        for (const auto& v : front) {
            n.ideal.f1 = std::min(n.ideal.f1, v.energy);
            n.ideal.f2 = std::min(n.ideal.f2, v.makespan);
            n.nadir.f1 = std::max(n.nadir.f1, v.energy);
            n.nadir.f2 = std::max(n.nadir.f2, v.makespan);
        }
    }
    if (n.ideal.f1 == inf) return Normalization{{0.0, 0.0}, {1.0, 1.0}};
    n.nadir.f1 += inflate * (n.nadir.f1 - n.ideal.f1);
    n.nadir.f2 += inflate * (n.nadir.f2 - n.ideal.f2);
    return n;
}

std::vector<Point2> nondominated_points(std::span<const Point2> points) {
    std::vector<Point2> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point2& a, const Point2& b) {
        return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
    });
    std::vector<Point2> out;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (const auto& p : sorted) {
        if (p.f2 < best_f2) {
            out.push_back(p);
            best_f2 = p.f2;
        }
    }
    return out;
}

ReferenceFront build_reference_front(std::span<const std::vector<ObjectiveVector>> fronts,
                                     std::size_t sample_count) {
    ReferenceFront ref;
    ref.sample_count = sample_count;
    ref.normalization = Normalization::enclosing(fronts);

    std::vector<Point2> all;
    for (const auto& front : fronts) {
        for (const auto& v : front) all.push_back(ref.normalization.apply(v));
    }
    if (all.empty()) throw std::invalid_argument("reference front: no points");
    const std::vector<Point2> nd = nondominated_points(all);
    if (nd.size() == 1 || sample_count <= 1) {
        ref.points = {nd.front()};
        return ref;
    }

    std::vector<double> cumulative(nd.size(), 0.0);
    for (std::size_t k = 1; k < nd.size(); ++k) {
        cumulative[k] = cumulative[k - 1] + std::hypot(nd[k].f1 - nd[k - 1].f1,
                                                       nd[k].f2 - nd[k - 1].f2);
    }
    const double total = cumulative.back();
    std::size_t seg = 1;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const double target =
            s + 1 == sample_count ? total
                                  : total * static_cast<double>(s) /
                                        static_cast<double>(sample_count - 1);
        while (seg + 1 < nd.size() && cumulative[seg] < target) ++seg;
        const double len = cumulative[seg] - cumulative[seg - 1];
        const double t = len > 0.0 ? std::clamp((target - cumulative[seg - 1]) / len, 0.0, 1.0) : 0.0;
        ref.points.push_back({nd[seg - 1].f1 + t * (nd[seg].f1 - nd[seg - 1].f1),
                              nd[seg - 1].f2 + t * (nd[seg].f2 - nd[seg - 1].f2)});
    }
    return ref;
}

double igd_plus(std::span<const Point2> front, std::span<const Point2> reference) {
    if (front.empty()) throw std::invalid_argument("igd_plus: empty front");
    if (reference.empty()) throw std::invalid_argument("igd_plus: empty reference");
    double sum = 0.0;
    for (const auto& z : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : front) {
            const double d1 = std::max(a.f1 - z.f1, 0.0);
            const double d2 = std::max(a.f2 - z.f2, 0.0);
            best = std::min(best, std::sqrt(d1 * d1 + d2 * d2));
        }
        sum += best;
    }
    return sum / static_cast<double>(reference.size());
}

double hypervolume_2d(std::span<const Point2> front, Point2 ref) {
    std::vector<Point2> inside;
    for (const auto& p : front) {
        if (p.f1 < ref.f1 && p.f2 < ref.f2) inside.push_back(p);
    }
    std::sort(inside.begin(), inside.end(), [](const Point2& a, const Point2& b) {
        return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
    });
    double area = 0.0;
    double ceiling = ref.f2;
    for (const auto& p : inside) {
        if (p.f2 < ceiling) {
            area += (ref.f1 - p.f1) * (ceiling - p.f2);
            ceiling = p.f2;
        }
    }
    return area;
}

} // namespace amerta
