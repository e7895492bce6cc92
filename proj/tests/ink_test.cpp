#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "inkbasis/inkbasis.hpp"
#include "oracle.hpp"

using namespace inkbasis;

namespace {

std::vector<InkTrace> pendigits(const std::string& text) {
    std::istringstream in(text);
    return parse_pendigits(in);
}

void expect_coeffs_near(const SymbolCoeffs& a, const SymbolCoeffs& b, double tol) {
    ASSERT_EQ(a.xs.size(), b.xs.size());
    ASSERT_EQ(a.ys.size(), b.ys.size());
    for (std::size_t i = 0; i < a.xs.size(); ++i) {
        EXPECT_NEAR(a.xs[i], b.xs[i], tol) << "x" << i + 1;
        EXPECT_NEAR(a.ys[i], b.ys[i], tol) << "y" << i + 1;
    }
}

InkTrace transformed(const InkTrace& t, double scale, double angle, Point shift) {
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Point> pts;
    for (auto p : t.points()) pts.push_back({scale * (c * p.x - s * p.y) + shift.x, scale * (s * p.x + c * p.y) + shift.y});
    return InkTrace(pts, t.label());
}

}  // namespace

TEST(ParsePendigits, ExampleLine) {
    const auto t = pendigits("0,100, 0,0, 100,0, 100,100, 0,100, 0,0, 50,50, 100,50, 7\n");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].size(), 8u);
    EXPECT_EQ(t[0].label(), "7");
    EXPECT_EQ(t[0].points()[0], (Point{0, 100}));
    EXPECT_EQ(t[0].points()[7], (Point{100, 50}));
}

TEST(ParsePendigits, BlankLinesSkipped) {
    const auto t = pendigits("\n1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,3\n   \n");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].label(), "3");
}

TEST(ParsePendigits, ErrorsCarryLineNumbers) {
    try {
        pendigits("1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,3\n\n1,2,3,4,5,6,7,8,9,10,11,12,13,14,5\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(pendigits("1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,1.5,3"), ParseError);
    EXPECT_THROW(pendigits("1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,x,3"), ParseError);
    EXPECT_THROW(pendigits("1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,12"), ParseError);
}

TEST(ParsePendigits, BundledDataset) {
    std::ifstream in(std::string(INKBASIS_TEST_DATA_DIR) + "/pendigits.txt");
    ASSERT_TRUE(in) << "data/pendigits.txt missing";
    const auto t = parse_pendigits(in);
    EXPECT_EQ(t.size(), 10992u);
    for (const auto& tr : t) ASSERT_TRUE(tr.label().has_value());
}

TEST(ParseInkml, BasicTrace) {
    const auto t = parse_inkml("<ink><trace>0 0, 1 0, 1 1</trace></ink>");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].points(), (std::vector<Point>{{0, 0}, {1, 0}, {1, 1}}));
    EXPECT_FALSE(t[0].label().has_value());
}

TEST(ParseInkml, ExtraChannelsIgnored) {
    const auto t = parse_inkml("<ink><trace>0 0 0.5, 1 0 0.7</trace></ink>");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].points(), (std::vector<Point>{{0, 0}, {1, 0}}));
}

TEST(ParseInkml, ZeroTraces) { EXPECT_TRUE(parse_inkml("<ink><annotation>empty</annotation></ink>").empty()); }

TEST(ParseInkml, Errors) {
    EXPECT_THROW(parse_inkml("<ink><trace>0 0, 1 0</ink>"), ParseError);
    EXPECT_THROW(parse_inkml("<ink><trace>0 0, a 1</trace></ink>"), ParseError);
}

TEST(ParseInkml, LabelsAndDocumentOrder) {
    const auto t = parse_inkml(R"(<ink xmlns="http://www.w3.org/2003/InkML">
  <trace xml:id="t1">0 0, 1 1</trace>
  <trace xml:id="t2">2 2, 3 3</trace>
  <trace><annotation type="truth">z</annotation>5 5, 6 6</trace>
  <traceGroup>
    <annotation type="truth">x</annotation>
    <traceView traceDataRef="t1"/>
    <traceView traceDataRef="t2"/>
  </traceGroup>
  <traceGroup><annotation>y</annotation><trace>9 9, 8 8</trace></traceGroup>
</ink>)");
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].label(), "x");
    EXPECT_EQ(t[1].label(), "x");
    EXPECT_EQ(t[2].label(), "z");
    EXPECT_EQ(t[3].label(), "y");
    EXPECT_EQ(t[3].points()[0], (Point{9, 9}));

    const auto symbols = group_symbols(t);
    ASSERT_EQ(symbols.size(), 3u);
    EXPECT_EQ(symbols[0].size(), 4u);
    EXPECT_EQ(symbols[0].label(), "x");
}

TEST(InkTrace, CollapsesConsecutiveDuplicates) {
    const InkTrace t({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {0, 0}});
    EXPECT_EQ(t.points(), (std::vector<Point>{{0, 0}, {1, 0}, {0, 0}}));
}

TEST(ArcLength, Examples) {
    const auto n = arc_length_normalize(InkTrace({{0, 0}, {3, 4}}));
    EXPECT_DOUBLE_EQ(n.total_length, 5.0);
    EXPECT_EQ(n.knots, (std::vector<double>{-1, 1}));
    EXPECT_NEAR(n.cx(-1), 0.0, 1e-15);
    EXPECT_NEAR(n.cx(1), 6.0 / 5.0, 1e-15);
    EXPECT_NEAR(n.cy(1), 8.0 / 5.0, 1e-15);
    EXPECT_NEAR(n.cx(0), 3.0 / 5.0, 1e-15);

    const auto m = arc_length_normalize(InkTrace({{0, 0}, {1, 0}, {2, 0}}));
    EXPECT_EQ(m.knots, (std::vector<double>{-1, 0, 1}));

    EXPECT_THROW(arc_length_normalize(InkTrace({{0, 0}, {0, 0}})), DegenerateTrace);
    EXPECT_THROW(arc_length_normalize(InkTrace({{1, 1}})), DegenerateTrace);
}

TEST(ArcLength, KnotsInterpolateRescaledPoints) {
    std::mt19937_64 rng(21);
    for (auto order : {SplineOrder::Linear, SplineOrder::Cubic})
        for (int trial = 0; trial < 50; ++trial) {
            const auto t = oracle::random_trace(rng, 3 + trial % 30);
            const auto n = arc_length_normalize(t, order);
            ASSERT_EQ(n.knots.size(), t.size());
            EXPECT_EQ(n.knots.front(), -1.0);
            EXPECT_EQ(n.knots.back(), 1.0);
            const double k = 2.0 / n.total_length;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i > 0) {
                    EXPECT_LT(n.knots[i - 1], n.knots[i]);
                }
                const double sx = k * t.points()[i].x, sy = k * t.points()[i].y;
                EXPECT_NEAR(n.cx(n.knots[i]), sx, 1e-12 * std::max(1.0, std::abs(sx)));
                EXPECT_NEAR(n.cy(n.knots[i]), sy, 1e-12 * std::max(1.0, std::abs(sy)));
            }
        }
}

TEST(ArcLength, LinearIsUnitSpeed) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = arc_length_normalize(oracle::random_trace(rng, 12));
        for (std::size_t s = 0; s + 1 < n.knots.size(); ++s) {
            const double mid = 0.5 * (n.knots[s] + n.knots[s + 1]);
            const double dx = n.cx.derivative_at(mid), dy = n.cy.derivative_at(mid);
            EXPECT_NEAR(dx * dx + dy * dy, 1.0, 1e-9);
        }
    }
}

TEST(ArcLength, CubicLengthOfStraightLineIsExact) {
    const auto n = arc_length_normalize(InkTrace({{0, 0}, {1, 1}, {2, 2}, {4, 4}}), SplineOrder::Cubic);
    EXPECT_NEAR(n.total_length, 4.0 * std::sqrt(2.0), 1e-12);
}

TEST(ArcLength, CubicLengthOfCircleConverges) {
    std::vector<Point> pts;
    for (int i = 0; i <= 64; ++i) {
        const double a = 2.0 * M_PI * i / 64.0;
        pts.push_back({std::cos(a), std::sin(a)});
    }
    const auto lin = arc_length_normalize(InkTrace(pts), SplineOrder::Linear);
    const auto cub = arc_length_normalize(InkTrace(pts), SplineOrder::Cubic);
    EXPECT_LT(std::abs(cub.total_length - 2.0 * M_PI), std::abs(lin.total_length - 2.0 * M_PI));
    EXPECT_NEAR(cub.total_length, 2.0 * M_PI, 1e-4);
}

TEST(ToCoeffs, StraightLine) {
    const auto basis = build_basis(BasisKind::Chebyshev, 3);
    const auto c = to_coeffs(arc_length_normalize(InkTrace({{0, 0}, {2, 0}})), basis);
    ASSERT_EQ(c.xs.size(), 3u);
    EXPECT_NEAR(c.xs[0], 1.0, 1e-14);
    EXPECT_NEAR(c.xs[1], 0.0, 1e-14);
    EXPECT_NEAR(c.xs[2], 0.0, 1e-14);
    for (double y : c.ys) EXPECT_NEAR(y, 0.0, 1e-14);
    EXPECT_EQ(c.basis_id, basis.id());
    ASSERT_TRUE(c.frame.has_value());
    EXPECT_NEAR(c.frame->x0, 1.0, 1e-14);
    EXPECT_EQ(c.frame->length, 2.0);

    // Oracle: <s + 1, T_1>_T / <T_1, T_1>_T.
    const auto line = PiecewisePoly::from_poly(DensePoly(ClassicalBasis::Monomial, {1, 1}));
    const double num = oracle::inner_piecewise(line, DensePoly::unit(ClassicalBasis::Chebyshev, 1), Weight::InverseSqrt, 0);
    EXPECT_NEAR(num / (M_PI / 2), c.xs[0], 1e-12);

    EXPECT_THROW(to_coeffs(arc_length_normalize(InkTrace({{0, 0}, {2, 0}})), build_basis(BasisKind::Chebyshev, 0)), DomainError);
}

TEST(ToCoeffs, InvariantUnderTranslationScaleAndResampling) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto kind : kAllBasisKinds) {
        const auto basis = build_basis(kind, 10);
        for (int trial = 0; trial < 20; ++trial) {
            const auto t = oracle::random_trace(rng, 4 + trial % 20);
            const auto ref = to_coeffs(arc_length_normalize(t), basis);

            expect_coeffs_near(to_coeffs(arc_length_normalize(transformed(t, 1.0, 0.0, {1000, -500})), basis), ref, 1e-9);
            expect_coeffs_near(to_coeffs(arc_length_normalize(transformed(t, 3.0, 0.0, {0, 0})), basis), ref, 1e-9);
            expect_coeffs_near(to_coeffs(arc_length_normalize(transformed(t, 0.01 + 5 * std::abs(u(rng)), 0.0, {u(rng) * 1e3, u(rng) * 1e3})), basis), ref, 1e-9);

            std::vector<Point> dense;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i > 0) {
                    const auto a = t.points()[i - 1], b = t.points()[i];
                    dense.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
                }
                dense.push_back(t.points()[i]);
            }
            expect_coeffs_near(to_coeffs(arc_length_normalize(InkTrace(dense)), basis), ref, 1e-9);
        }
    }
}

TEST(ToCoeffs, RotationRotatesCoefficientPairs) {
    std::mt19937_64 rng(24);
    const auto basis = build_basis(BasisKind::ChebyshevSobolev, 8);
    const auto t = oracle::random_trace(rng, 10);
    const double a = 0.7;
    const auto ref = to_coeffs(arc_length_normalize(t), basis);
    const auto rot = to_coeffs(arc_length_normalize(transformed(t, 1.0, a, {0, 0})), basis);
    for (std::size_t i = 0; i < ref.xs.size(); ++i) {
        EXPECT_NEAR(rot.xs[i], std::cos(a) * ref.xs[i] - std::sin(a) * ref.ys[i], 1e-9);
        EXPECT_NEAR(rot.ys[i], std::sin(a) * ref.xs[i] + std::cos(a) * ref.ys[i], 1e-9);
    }
}

TEST(Jsonl, RoundTripsBitExact) {
    std::mt19937_64 rng(25);
    const auto basis = build_basis(BasisKind::LegendreSobolev, 6);
    std::vector<SymbolCoeffs> items;
    for (int i = 0; i < 10; ++i) {
        auto t = oracle::random_trace(rng, 7);
        if (i % 3) t.set_label("c" + std::to_string(i));
        items.push_back(to_coeffs(arc_length_normalize(t), basis));
    }
    items[4].frame.reset();
    std::stringstream io;
    write_jsonl(io, items);
    EXPECT_EQ(read_jsonl(io), items);

    std::istringstream bad("{\"basis_id\":\"x\",\"xs\":[1],\"ys\":[1]}\n\n{\"xs\":[1]}\n");
    try {
        read_jsonl(bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    std::istringstream mismatch("{\"basis_id\":\"x\",\"xs\":[1,2],\"ys\":[1]}\n");
    EXPECT_THROW(read_jsonl(mismatch), ParseError);
}

TEST(FullSeries, RestoresConstantTerms) {
    const auto basis = build_basis(BasisKind::Chebyshev, 3);
    const auto c = to_coeffs(arc_length_normalize(InkTrace({{0, 0}, {2, 0}})), basis);
    const auto [x, y] = full_series(c);
    EXPECT_EQ(x.size(), 4u);
    EXPECT_NEAR(x[0], 1.0, 1e-14);
    auto bare = c;
    bare.frame.reset();
    EXPECT_THROW(full_series(bare), Error);
}
