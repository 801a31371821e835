#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chaoscrypt/errors.hpp"
#include "chaoscrypt/maps.hpp"

using namespace chaoscrypt;

namespace {

constexpr MapParams kFig2{-3.5, 0.9, 1.0};  // Arnold
constexpr MapParams kFig3{2.75, 0.1, 1.0};  // Duffing

}  // namespace

TEST(SignedMod, IntegerExamples) {
    EXPECT_EQ(signed_mod(5, 3), 2);
    EXPECT_EQ(signed_mod(-5, 3), -2);
    EXPECT_EQ(signed_mod(0, 7), 0);
    EXPECT_EQ(signed_mod(6, 3), 0);
}

TEST(SignedMod, RealArguments) {
    EXPECT_NEAR(signed_mod(1.06, 1.0), 0.06, 1e-12);
    EXPECT_NEAR(signed_mod(-1.06, 1.0), -0.06, 1e-12);
    EXPECT_EQ(signed_mod(0.25, 1.0), 0.25);
}

TEST(SignedMod, RejectsBadArguments) {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(signed_mod(1.0, 0.0), DomainError);
    EXPECT_THROW(signed_mod(1.0, -2.0), DomainError);
    EXPECT_THROW(signed_mod(nan, 1.0), DomainError);
    EXPECT_THROW(signed_mod(inf, 1.0), DomainError);
    EXPECT_THROW(signed_mod(1.0, inf), DomainError);
}

TEST(SignedMod, RandomDecomposition) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dd(-1e3, 1e3);
    std::uniform_real_distribution<double> dm(1e-3, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const double d = dd(rng);
        const double m = dm(rng);
        const double r = signed_mod(d, m);
        ASSERT_LT(std::fabs(r), m);
        ASSERT_TRUE(r == 0.0 || std::signbit(r) == std::signbit(d)) << d << " " << m;
        const double q = (d - r) / m;
        ASSERT_NEAR(q, std::round(q), 1e-9 * std::max(1.0, std::fabs(q)));
    }
}

TEST(ArnoldStep, FigureParameters) {
    const State s = arnold_step({0.5, 0.06}, kFig2);
    EXPECT_NEAR(s.x, -0.27, 1e-12);
    EXPECT_NEAR(s.y, 0.506, 1e-12);
}

TEST(ArnoldStep, KnownPoints) {
    EXPECT_EQ(arnold_step({0, 0}, kFig2), (State{0, 0}));
    const State s = arnold_step({1, 1}, {1.0, 1.0, 1.0});
    EXPECT_EQ(s.x, 0.0);
    EXPECT_EQ(s.y, 0.0);
    // torus modulus scales the wrap
    const State w = arnold_step({0.5, 0.06}, {-3.5, 0.9, 2.0});
    EXPECT_NEAR(w.x, -4.5 * 1.06, 1e-12);
    EXPECT_NEAR(w.y, 0.506, 1e-12);
}

TEST(ArnoldStep, SecondIterateOracle) {
    const State s = iterate(MapKind::ArnoldCat, {0.5, 0.06}, kFig2, 2);
    EXPECT_NEAR(s.x, 0.15300000000000213, 1e-12);
    EXPECT_NEAR(s.y, -0.21940000000000026, 1e-12);
}

TEST(DuffingStep, FigureParameters) {
    const State s = duffing_step({-0.04, 0.2}, {2.75, 0.1, 1.0});
    EXPECT_NEAR(s.x, 0.2, 1e-12);
    EXPECT_NEAR(s.y, 0.546, 1e-12);
}

TEST(DuffingStep, OriginIsFixed) {
    EXPECT_EQ(iterate(MapKind::Duffing, {0, 0}, kFig3, 1000), (State{0, 0}));
}

TEST(DuffingStep, IgnoresModulus) {
    EXPECT_EQ(duffing_step({0.3, -0.7}, {2.75, 0.2, 1.0}),
              duffing_step({0.3, -0.7}, {2.75, 0.2, 9.0}));
}

TEST(Iterate, ZeroStepsIsIdentity) {
    EXPECT_EQ(iterate(MapKind::ArnoldCat, {0.1, 0.2}, kFig2, 0), (State{0.1, 0.2}));
}

TEST(Iterate, CompositionProperty) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dn(0, 100);
    std::uniform_real_distribution<double> du(-0.5, 0.5);
    for (int i = 0; i < 200; ++i) {
        const auto kind = i % 2 ? MapKind::ArnoldCat : MapKind::Duffing;
        const MapParams& p = i % 2 ? kFig2 : kFig3;
        const State s0{du(rng), du(rng)};
        const std::size_t m = dn(rng), n = dn(rng);
        const State lhs = iterate(kind, iterate(kind, s0, p, n), p, m);
        const State rhs = iterate(kind, s0, p, m + n);
        ASSERT_EQ(lhs, rhs);
        State manual = s0;
        for (std::size_t k = 0; k < m; ++k) manual = step(kind, manual, p);
        ASSERT_EQ(manual, iterate(kind, s0, p, m));
    }
}

TEST(Iterate, DivergenceReportsStep) {
    try {
        iterate(MapKind::Duffing, {0.0, 2.0}, {10.0, 0.1, 1.0}, 100);
        FAIL() << "expected divergence";
    } catch (const DivergenceError& e) {
        EXPECT_LT(e.step(), 100u);
        EXPECT_FALSE(e.symbol().has_value());
    }
}

TEST(Iterate, RejectsNonFiniteInput) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(iterate(MapKind::ArnoldCat, {nan, 0}, kFig2, 1), DomainError);
    EXPECT_THROW(iterate(MapKind::ArnoldCat, {0, 0}, {nan, 0.9, 1}, 1), DomainError);
    EXPECT_THROW(iterate(MapKind::ArnoldCat, {0, 0}, {-3.5, 0.9, 0.0}, 1), DomainError);
}

TEST(Trajectory, LengthAndStart) {
    const auto t = trajectory(MapKind::ArnoldCat, {0.5, 0.06}, kFig2, 1);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0], (State{0.5, 0.06}));
    EXPECT_EQ(t[1], arnold_step({0.5, 0.06}, kFig2));
    EXPECT_THROW(trajectory(MapKind::ArnoldCat, {0, 0}, kFig2, 0), DomainError);
}

TEST(Trajectory, FigureOrbitsStayBounded) {
    const auto d = trajectory(MapKind::Duffing, {-0.04, 0.2}, kFig3, 5000);
    ASSERT_EQ(d.size(), 5001u);
    for (const State& s : d) {
        ASSERT_LE(std::fabs(s.x), 10.0);
        ASSERT_LE(std::fabs(s.y), 10.0);
    }
    const auto a = trajectory(MapKind::ArnoldCat, {0.5, 0.06}, kFig2, 5000);
    for (std::size_t k = 1; k < a.size(); ++k) {
        ASSERT_LT(std::fabs(a[k].y), 1.0);
        ASSERT_LT(std::fabs(a[k].x), 4.5);
    }
}

TEST(Trajectory, DivergenceKeepsPrefix) {
    try {
        trajectory(MapKind::Duffing, {0.0, 2.0}, {10.0, 0.1, 1.0}, 100);
        FAIL() << "expected divergence";
    } catch (const TrajectoryDivergence& e) {
        ASSERT_EQ(e.prefix().size(), e.step() + 1);
        EXPECT_EQ(e.prefix().front(), (State{0.0, 2.0}));
        for (const State& s : e.prefix()) EXPECT_LE(std::fabs(s.y), kDivergenceBound);
    }
}

TEST(DivergenceMeasure, FigureParametersAreChaotic) {
    EXPECT_GE(divergence_measure(MapKind::Duffing, {-0.04, 0.2}, 1e-8, kFig3, 5000), 0.1);
    EXPECT_GE(divergence_measure(MapKind::ArnoldCat, {0.5, 0.06}, 1e-8, kFig2, 5000), 0.1);
}

TEST(DivergenceMeasure, StableFixedPointStaysClose) {
    // contracting linearisation at the origin
    const double m = divergence_measure(MapKind::Duffing, {0, 0}, 1e-8, {0.5, 0.1, 1}, 1000);
    EXPECT_LT(m, 1e-8);
}

TEST(DivergenceMeasure, RejectsBadDelta) {
    EXPECT_THROW(divergence_measure(MapKind::Duffing, {0, 0}, 0.0, kFig3, 10), DomainError);
    EXPECT_THROW(divergence_measure(MapKind::Duffing, {0, 0}, -1e-8, kFig3, 10), DomainError);
}

TEST(TrajectoryCsv, RoundTripsExactly) {
    const auto t = trajectory(MapKind::ArnoldCat, {0.5, 0.06}, kFig2, 50);
    std::ostringstream out;
    write_trajectory_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "k,x,y");
    std::size_t k = 0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        ASSERT_EQ(std::stoul(line.substr(0, c1)), k);
        ASSERT_EQ(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), t[k].x);
        ASSERT_EQ(std::stod(line.substr(c2 + 1)), t[k].y);
        ++k;
    }
    EXPECT_EQ(k, t.size());
}

TEST(Maps, SameResultOnEveryThread) {
    const State ref = iterate(MapKind::Duffing, {-0.04, 0.2}, kFig3, 20000);
    std::vector<State> got(4);
    {
        std::vector<std::jthread> pool;
        for (auto& g : got)
            pool.emplace_back([&g] { g = iterate(MapKind::Duffing, {-0.04, 0.2}, kFig3, 20000); });
    }
    for (const State& g : got) EXPECT_EQ(g, ref);
}

TEST(MapKindNames, ParseAndPrint) {
    EXPECT_EQ(to_string(MapKind::ArnoldCat), "arnold");
    EXPECT_EQ(to_string(MapKind::Duffing), "duffing");
    EXPECT_EQ(parse_map_kind("Duffing"), MapKind::Duffing);
    EXPECT_EQ(parse_map_kind("cat"), MapKind::ArnoldCat);
    EXPECT_THROW(parse_map_kind("logistic"), DomainError);
}
