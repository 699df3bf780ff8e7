#include <amerta/indicators.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace amerta;

namespace {

// Area of the union of boxes [p, ref] on the grid spanned by all coordinates.
double hv_cells(const std::vector<Point2>& pts, Point2 ref) {
    std::vector<double> xs{ref.f1};
    std::vector<double> ys{ref.f2};
    for (const auto& p : pts) {
        if (p.f1 < ref.f1 && p.f2 < ref.f2) {
            xs.push_back(p.f1);
            ys.push_back(p.f2);
        }
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            const double cx = 0.5 * (xs[i] + xs[i + 1]);
            const double cy = 0.5 * (ys[j] + ys[j + 1]);
            const bool covered = std::any_of(pts.begin(), pts.end(), [&](const Point2& p) {
                return p.f1 <= cx && p.f2 <= cy;
            });
            if (covered) area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
        }
    }
    return area;
}

std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.2);
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

} // namespace

TEST_CASE("hypervolume examples") {
    const std::vector<Point2> one{{0.5, 0.5}};
    CHECK(hypervolume_2d(one) == doctest::Approx(0.25));
    const std::vector<Point2> corner{{1.0, 1.0}};
    CHECK(hypervolume_2d(corner) == 0.0);
    const std::vector<Point2> two{{0.2, 0.8}, {0.8, 0.2}};
    CHECK(hypervolume_2d(two) == doctest::Approx(0.28));
    CHECK(hypervolume_2d({}) == 0.0);
    const std::vector<Point2> dup{{0.5, 0.5}, {0.5, 0.5}, {0.7, 0.7}};
    CHECK(hypervolume_2d(dup) == doctest::Approx(0.25));
}

TEST_CASE("hypervolume agrees with a cell decomposition") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const auto pts = random_points(rng, 1 + rng() % 12);
        CHECK(hypervolume_2d(pts) == doctest::Approx(hv_cells(pts, {1.0, 1.0})).epsilon(1e-12));
    }
}

TEST_CASE("hypervolume is monotone under adding points") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto pts = random_points(rng, 1 + rng() % 8);
        const double before = hypervolume_2d(pts);
        pts.push_back(random_points(rng, 1)[0]);
        CHECK(hypervolume_2d(pts) >= before - 1e-15);
    }
}

TEST_CASE("igd+ examples") {
    const std::vector<Point2> ref{{0.0, 0.0}};
    const std::vector<Point2> far{{1.0, 1.0}};
    CHECK(igd_plus(far, ref) == doctest::Approx(std::sqrt(2.0)));
    const std::vector<Point2> better{{-1.0, -1.0}};
    CHECK(igd_plus(better, ref) == 0.0);
    const std::vector<Point2> r2{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    CHECK(igd_plus(r2, r2) == 0.0);
    // Only the component beyond the reference point counts.
    const std::vector<Point2> side{{0.3, -2.0}};
    CHECK(igd_plus(side, ref) == doctest::Approx(0.3));
    CHECK_THROWS_AS(igd_plus({}, ref), std::invalid_argument);
    CHECK_THROWS_AS(igd_plus(far, {}), std::invalid_argument);
}

TEST_CASE("igd+ is zero exactly when every reference point is weakly dominated") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const auto front = random_points(rng, 1 + rng() % 6);
        const auto ref = random_points(rng, 1 + rng() % 6);
        const bool covered = std::all_of(ref.begin(), ref.end(), [&](const Point2& z) {
            return std::any_of(front.begin(), front.end(),
                               [&](const Point2& a) { return a.f1 <= z.f1 && a.f2 <= z.f2; });
        });
        CHECK((igd_plus(front, ref) == 0.0) == covered);
    }
}

TEST_CASE("igd+ does not increase when a point is added") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        auto front = random_points(rng, 1 + rng() % 6);
        const auto ref = random_points(rng, 20);
        const double before = igd_plus(front, ref);
        front.push_back(random_points(rng, 1)[0]);
        CHECK(igd_plus(front, ref) <= before + 1e-15);
    }
}

TEST_CASE("normalization") {
    const std::vector<std::vector<ObjectiveVector>> fronts{{{10, 100}, {20, 50}}, {{15, 80}}};
    const Normalization n = Normalization::enclosing(fronts);
    CHECK(n.ideal == Point2{10, 50});
    CHECK(n.nadir == Point2{20, 100});
    CHECK(n.apply(ObjectiveVector{15, 75}) == Point2{0.5, 0.5});
    const Normalization inflated = Normalization::enclosing(fronts, 0.01);
    CHECK(inflated.nadir.f1 == doctest::Approx(20.1));
    CHECK(inflated.nadir.f2 == doctest::Approx(100.5));

    const std::vector<std::vector<ObjectiveVector>> flat{{{5, 7}}};
    const Normalization d = Normalization::enclosing(flat);
    CHECK(d.apply(ObjectiveVector{5, 7}) == Point2{0, 0});
    CHECK(d.apply(ObjectiveVector{6, 9}) == Point2{1, 2});
}

TEST_CASE("non-dominated points") {
    const std::vector<Point2> pts{{0.5, 0.5}, {0.2, 0.9}, {0.6, 0.6}, {0.2, 0.9}, {0.9, 0.1}};
    CHECK(nondominated_points(pts) == std::vector<Point2>{{0.2, 0.9}, {0.5, 0.5}, {0.9, 0.1}});
}

TEST_CASE("reference front resampling") {
    const std::vector<std::vector<ObjectiveVector>> fronts{{{0, 1}, {1, 0}}};
    const auto ref = build_reference_front(fronts, 3);
    REQUIRE(ref.points.size() == 3);
    CHECK(ref.points[0] == Point2{0, 1});
    CHECK(ref.points[1].f1 == doctest::Approx(0.5));
    CHECK(ref.points[1].f2 == doctest::Approx(0.5));
    CHECK(ref.points[2] == Point2{1, 0});

    const std::vector<std::vector<ObjectiveVector>> single{{{3, 4}}, {{3, 4}}};
    const auto one = build_reference_front(single);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0] == Point2{0, 0});

    const std::vector<std::vector<ObjectiveVector>> none{{}};
    CHECK_THROWS_AS(build_reference_front(none), std::invalid_argument);
}

TEST_CASE("reference front: equal arc-length spacing along the merged front") {
    const std::vector<std::vector<ObjectiveVector>> fronts{
        {{0, 10}, {2, 4}, {10, 0}}, {{1, 8}, {3, 5}}, {{5, 5}}};
    const auto ref = build_reference_front(fronts);
    REQUIRE(ref.points.size() == 500);
    double total = 0.0;
    std::vector<double> gaps;
    for (std::size_t k = 1; k < ref.points.size(); ++k) {
        gaps.push_back(std::hypot(ref.points[k].f1 - ref.points[k - 1].f1,
                                  ref.points[k].f2 - ref.points[k - 1].f2));
        total += gaps.back();
    }
    CHECK(ref.points.front() == Point2{0, 1});
    CHECK(ref.points.back() == Point2{1, 0});
    // Chords across a vertex are shorter than the arc step; every other gap equals it.
    const double step = *std::max_element(gaps.begin(), gaps.end());
    int short_gaps = 0;
    for (double g : gaps) {
        if (g < step - 1e-9) ++short_gaps;
    }
    CHECK(short_gaps <= 3);
    for (std::size_t k = 1; k < ref.points.size(); ++k) {
        CHECK(ref.points[k].f1 >= ref.points[k - 1].f1);
        CHECK(ref.points[k].f2 <= ref.points[k - 1].f2);
    }
}
