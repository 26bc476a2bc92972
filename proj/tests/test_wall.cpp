#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lorentz/config.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/stats.hpp"
#include "lorentz/wall.hpp"

using namespace lorentz;

namespace {

WallConfig one_component(double lo, double hi) {
    return WallConfig::from_components({{lo, hi}});
}

HoleSchedule inv_sqrt_schedule(double c, std::int64_t horizon, CrossingMode mode) {
    HoleSchedule s;
    s.regime = Regime::shrinking;
    s.family = AlphaFamily::inv_sqrt;
    s.c = c;
    s.horizon = horizon;
    s.crossing_mode = mode;
    return s;
}

}  // namespace

TEST_CASE("make_hole: plain and wrapped") {
    auto wall = one_component(0.2, 0.8);
    auto h1 = make_hole(wall, 0.3, 0.1);
    REQUIRE(h1.n_pieces == 1);
    CHECK(h1.pieces[0].first == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(h1.pieces[0].second == doctest::Approx(0.4).epsilon(1e-15));

    auto h2 = make_hole(wall, 0.75, 0.1);
    REQUIRE(h2.n_pieces == 2);
    CHECK(h2.pieces[0].first == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(h2.pieces[0].second == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(h2.pieces[1].first == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(h2.pieces[1].second == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("hole_contains: open intervals") {
    auto wall = one_component(0.2, 0.8);
    auto h = make_hole(wall, 0.3, 0.1);
    CHECK(hole_contains(h, 0.35));
    CHECK_FALSE(hole_contains(h, 0.4));  // endpoints excluded
    CHECK_FALSE(hole_contains(h, 0.3));

    auto hw = make_hole(wall, 0.75, 0.1);
    CHECK(hole_contains(hw, 0.22));
    CHECK(hole_contains(hw, 0.78));
    CHECK_FALSE(hole_contains(hw, 0.5));
}

TEST_CASE("crossing_probability") {
    auto wall = one_component(0.2, 0.7);  // c1 = 0.5
    CHECK(crossing_probability(wall, 0.0) == 0.0);
    CHECK(crossing_probability(wall, 0.05) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_THROWS_AS(crossing_probability(wall, 0.6), HoleTooLarge);
}

TEST_CASE("sample_hole: size guard and coverage probability") {
    auto wall = one_component(0.2, 0.8);
    Rng rng(substream_seed(21, 0, 1));
    CHECK_THROWS_AS(sample_hole(rng, wall, 0.7), HoleTooLarge);
    CHECK_THROWS_AS(sample_hole(rng, wall, 0.0), DomainError);

    // P(y in hole) = alpha / c1 for a fixed interior height
    const double alpha = 0.1, y = 0.37;
    const int m = 1000000;
    int hits = 0;
    for (int i = 0; i < m; ++i)
        if (hole_contains(sample_hole(rng, wall, alpha), y)) ++hits;
    const double p = alpha / wall.c1;
    const double se = std::sqrt(p * (1 - p) / m);
    CHECK(std::abs(static_cast<double>(hits) / m - p) < 3 * se);
}

TEST_CASE("sampled holes stay inside single components") {
    auto wall = WallConfig::from_components({{0.05, 0.35}, {0.5, 0.6}, {0.7, 0.95}});
    CHECK(wall.c1 == doctest::Approx(0.65).epsilon(1e-15));
    CHECK(wall.min_component_length == doctest::Approx(0.1).epsilon(1e-12));
    Rng rng(substream_seed(21, 1, 1));
    for (int i = 0; i < 1000000; ++i) {
        auto h = sample_hole(rng, wall, 0.08);
        double len = 0.0;
        int comp0 = -1;
        for (int p = 0; p < h.n_pieces; ++p) {
            const auto [lo, hi] = h.pieces[p];
            len += hi - lo;
            // locate the component containing this piece
            int comp = -1;
            for (std::size_t c = 0; c < wall.components.size(); ++c)
                if (lo >= wall.components[c].first - 1e-12 &&
                    hi <= wall.components[c].second + 1e-12)
                    comp = static_cast<int>(c);
            REQUIRE(comp >= 0);  // piece inside the wall
            if (p == 0)
                comp0 = comp;
            else
                REQUIRE(comp == comp0);  // wrap never straddles components
        }
        REQUIRE(len == doctest::Approx(0.08).epsilon(1e-9));
    }
}

TEST_CASE("hole start points are uniform in wall arclength") {
    auto wall = WallConfig::from_components({{0.05, 0.35}, {0.5, 0.6}, {0.7, 0.95}});
    Rng rng(substream_seed(21, 2, 1));
    const int m = 100000;
    std::vector<double> arcs(m);
    for (int i = 0; i < m; ++i) {
        auto h = sample_hole(rng, wall, 0.05);
        arcs[i] = wall.arclength(h.pieces[0].first) / wall.c1;
    }
    auto ks = ks_one_sample("xi_uniform", arcs, [](double x) { return x; }, 0.02);
    CHECK(ks.statistic < 0.02);
}

TEST_CASE("decide_crossing: zero hole never crosses") {
    auto wall = one_component(0.2, 0.8);
    HoleSchedule s = inv_sqrt_schedule(1.0, 100, CrossingMode::geometric);
    s.family = AlphaFamily::constant;
    s.alpha_const = 0.0;
    Rng rng(substream_seed(21, 3, 1));
    for (int i = 0; i < 1000; ++i) CHECK_FALSE(decide_crossing(rng, s, wall, 1, 0.5));
}

TEST_CASE("decide_crossing: empirical rate matches alpha/c1") {
    // c/sqrt(n) with c=1 at n=1e4 and c1=0.5: rate 0.02
    auto wall = one_component(0.2, 0.7);
    auto s = inv_sqrt_schedule(1.0, 10000, CrossingMode::geometric);
    Rng rng(substream_seed(21, 4, 1));
    const int m = 1000000;
    int hits = 0;
    for (int i = 0; i < m; ++i)
        if (decide_crossing(rng, s, wall, 10000, 0.45)) ++hits;
    const double p = 0.02;
    const double se = std::sqrt(p * (1 - p) / m);
    CHECK(std::abs(static_cast<double>(hits) / m - p) < 3 * se);
}

TEST_CASE("geometric and trapdoor crossing laws agree") {
    auto wall = WallConfig::from_components({{0.1, 0.45}, {0.55, 0.9}});
    auto geo = inv_sqrt_schedule(2.0, 2500, CrossingMode::geometric);
    auto trap = inv_sqrt_schedule(2.0, 2500, CrossingMode::trapdoor);
    Rng r1(substream_seed(21, 5, 1));
    Rng r2(substream_seed(21, 6, 1));  // independent streams
    const int m = 1000000;
    const double y = 0.62;
    int n1 = 0, n2 = 0;
    for (int i = 0; i < m; ++i) {
        if (decide_crossing(r1, geo, wall, 2500, y)) ++n1;
        if (decide_crossing(r2, trap, wall, 2500, y)) ++n2;
    }
    const double p1 = static_cast<double>(n1) / m, p2 = static_cast<double>(n2) / m;
    const double p = 0.04 / wall.c1;
    const double se = std::sqrt(2.0 * p * (1 - p) / m);
    CHECK(std::abs(p1 - p2) < 4 * se);
}

TEST_CASE("schedule validation") {
    auto wall = one_component(0.2, 0.8);  // min length 0.6
    auto ok = inv_sqrt_schedule(0.5, 10000, CrossingMode::geometric);
    CHECK_NOTHROW(ok.validate(wall));

    // alpha_1 = 1 does not fit: hard error, not a clamp
    auto big = inv_sqrt_schedule(1.0, 10000, CrossingMode::geometric);
    CHECK_THROWS_AS(big.validate(wall), HoleTooLarge);

    HoleSchedule per;
    per.regime = Regime::no_wall;
    CHECK_NOTHROW(per.validate(wall));

    // double_array uses alpha_n for every draw
    HoleSchedule dbl = inv_sqrt_schedule(1.0, 10000, CrossingMode::geometric);
    dbl.regime = Regime::double_array;
    CHECK(dbl.hole_size(1) == doctest::Approx(0.01));
    CHECK_NOTHROW(dbl.validate(wall));
}

TEST_CASE("wall derived from the fixture lattice") {
    ExperimentConfig fx = default_fixture();
    auto wall = WallConfig::from_lattice(fx.lattice);
    REQUIRE(wall.components.size() == 1);
    CHECK(wall.components[0].first == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(wall.components[0].second == doctest::Approx(0.92).epsilon(1e-12));
    CHECK(wall.c1 == doctest::Approx(0.84).epsilon(1e-12));

    // a disk crossing the axis mid-strip splits the wall in two
    ScattererLattice lat = fx.lattice;
    lat.cell_disks.push_back({{0.0, 0.5}, 0.05});
    auto split = WallConfig::from_lattice(lat);
    CHECK(split.components.size() == 2);
}

TEST_CASE("alpha families") {
    HoleSchedule s;
    s.family = AlphaFamily::inv_sqrt;
    s.c = 1.0;
    CHECK(s.alpha(10000) == doctest::Approx(0.01).epsilon(1e-15));
    s.family = AlphaFamily::power;
    s.c = 2.0;
    s.beta = 0.25;
    CHECK(s.alpha(16) == doctest::Approx(1.0).epsilon(1e-15));
    s.family = AlphaFamily::constant;
    s.alpha_const = 0.125;
    CHECK(s.alpha(77) == 0.125);
}
