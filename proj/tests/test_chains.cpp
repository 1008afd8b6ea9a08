#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "linkspace/chains.hpp"
#include "linkspace/error.hpp"
#include "support.hpp"

using namespace linkspace;
using namespace testsupport;

namespace {

ErrorKind error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

double side(const QuadLengths& q, char u, char v) {
    const std::set<char> s{u, v};
    if (s == std::set<char>{'a', 'b'}) return q.l1;
    if (s == std::set<char>{'b', 'c'}) return q.l2;
    if (s == std::set<char>{'c', 'd'}) return q.l3;
    if (s == std::set<char>{'a', 'd'}) return q.l4;
    return NAN;
}

// Folded triangle check by Heron: y sits on the link xz, so |xy| or |yz| is
// fixed by the link through y, and the remaining vertex closes a triangle.
bool feasible_by_heron(const QuadLengths& q, const std::string& sym) {
    const char x = sym[1], y = sym[2], z = sym[3];
    char w = 0;
    for (char c : std::string("abcd"))
        if (c != x && c != y && c != z) w = c;
    const double xz = side(q, x, z);
    const bool joined_x = !std::isnan(side(q, x, y));
    const double near = joined_x ? side(q, x, y) : side(q, y, z);
    const char far_end = joined_x ? z : x;
    const double rest = xz - near;  // distance from y to the far end
    if (!(rest > 0.0)) return false;
    const double a = rest, b = side(q, y, w), c = side(q, far_end, w);
    const double h = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    return h > 0.0;
}

bool collinear(const Vec3& p, const Vec3& q, const Vec3& r, double tol) { return norm(cross(q - p, r - p)) <= tol; }

} // namespace

TEST_CASE("quad chamber examples") {
    const auto r = quad_chamber({5, 5, 1, 5});
    CHECK(r.arc_case == "iv");
    CHECK(r.collineations == std::vector<std::string>{"(acd)", "(bdc)"});
    CHECK(r.schedule_text() == "point -> circle -> circle at (acd) -> interval -> point at (bdc)");
    CHECK(r.alpha_min * 180 / std::numbers::pi == doctest::Approx(47.1564).epsilon(1e-5));
    CHECK(r.alpha_max * 180 / std::numbers::pi == doctest::Approx(73.7398).epsilon(1e-5));
    CHECK_FALSE(r.schedule_derived);

    const auto ii = quad_chamber({2, 1.5, 1.4, 1});
    CHECK_FALSE(ii.ineq_sum);
    CHECK(ii.ineq_diff);
    CHECK(ii.arc_case == "ii");
    CHECK(ii.normalized);

    const auto i = quad_chamber({2, 1.9, 1.8, 1});
    CHECK(i.ineq_sum);
    CHECK(i.ineq_diff);
    CHECK(i.arc_case == "i");
    CHECK(i.schedule_derived);
}

TEST_CASE("quad length errors") {
    CHECK(error_of([] { quad_chamber({1, 1, 1, 5}); }) == ErrorKind::InfeasibleLengths);
    CHECK(error_of([] { quad_chamber({1, 1, 1, -1}); }) == ErrorKind::InfeasibleLengths);
    CHECK(error_of([] { quad_chamber({1, 2, 3, 4}); }) == ErrorKind::ChamberWall);
    CHECK(error_of([] { quad_chamber({1, 1, 1, 1}); }) == ErrorKind::ChamberWall);
    CHECK(error_of([] { quad_chamber({3, 1, 1, 1}); }) == ErrorKind::ChamberWall);
}

TEST_CASE("quad chamber properties on random lengths") {
    std::mt19937_64 g(51);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    int done = 0;
    while (done < 1000) {
        const QuadLengths in{u(g), u(g), u(g), u(g)};
        QuadReport r;
        try {
            r = quad_chamber(in);
        } catch (const Error&) {
            continue;
        }
        ++done;
        const QuadLengths& q = r.lengths;
        // relabeling is a permutation of the input
        for (int k = 1; k <= 4; ++k) CHECK(q[k] == in[r.source[k - 1]]);
        // exactly one case, matching the inequalities
        const bool s = q.l1 + q.l4 < q.l2 + q.l3, d = std::abs(q.l2 - q.l3) < q.l1 - q.l4;
        const std::string expect = s ? (d ? "i" : "iii") : (d ? "ii" : "iv");
        CHECK(r.arc_case == expect);
        // relabel then classify
        if (done % 10 == 0) {
            const auto again = quad_chamber(q);
            CHECK(again.arc_case == r.arc_case);
            CHECK(again.lengths[1] == q.l1);
        }
        // collineations against Heron
        for (const auto& sym : collineation_symbols()) {
            const bool f = feasible_by_heron(q, sym);
            CHECK(collineation_feasible(q, sym) == f);
            if (!f) continue;
            const Placement p = collineation_placement(q, sym);
            CHECK(is_immersed_configuration(quad_linkage(q), p, 1e-9));
            const Vec3 x = p.at(std::string(1, sym[1])), y = p.at(std::string(1, sym[2])), z = p.at(std::string(1, sym[3]));
            CHECK(distance(x, y) + distance(y, z) == doctest::Approx(distance(x, z)));
        }
        // endpoint placements: an alignment at the top of the arc, a
        // collineation at the bottom
        const Placement top = arc_placement(q, r.alpha_max, true);
        const bool top_aligned = collinear(top.at("b"), top.at("c"), top.at("d"), 1e-6 * q.l1) ||
                                 collinear(top.at("d"), top.at("a"), top.at("b"), 1e-6 * q.l1);
        CHECK(top_aligned);
        REQUIRE(r.fiber_schedule.front().fiber == "point");
        REQUIRE(r.fiber_schedule.back().fiber == "point");
        const auto low = detect_collineation(q, arc_placement(q, r.alpha_min, true), 1e-6);
        REQUIRE(low);
        CHECK(*low == *r.fiber_schedule.back().at);
        // spans alternate with transitions and cover the arc
        double at = r.alpha_max;
        for (const auto& e : r.fiber_schedule) {
            CHECK(e.alpha_from == at);
            at = e.alpha_to;
            CHECK(e.alpha_to <= e.alpha_from);
        }
        CHECK(at == r.alpha_min);
    }
}

TEST_CASE("fiber schedule matches rotating the free vertex") {
    std::mt19937_64 g(52);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::vector<QuadLengths> qs{{5, 5, 1, 5}};
    while (qs.size() < 40) {
        const QuadLengths q{u(g), u(g), u(g), u(g)};
        try {
            check_quad_lengths(q);
        } catch (const Error&) {
            continue;
        }
        qs.push_back(q);
    }
    for (const auto& in : qs) {
        const auto r = quad_chamber(in);
        for (const auto& e : r.fiber_schedule) {
            if (e.kind != FiberEntry::Kind::Span) continue;
            for (double t : {0.25, 0.5, 0.75}) {
                const double a = e.alpha_from + (e.alpha_to - e.alpha_from) * t;
                CHECK(fiber_by_rotation(r.lengths, a) == e.fiber);
            }
        }
    }
    // (5,5,1,5): the full turn embeds before (acd) and is obstructed after it
    const auto r = quad_chamber({5, 5, 1, 5});
    REQUIRE(r.fiber_schedule.size() == 5);
    const double cut = r.fiber_schedule[2].alpha_from;
    CHECK(fiber_by_rotation(r.lengths, cut + 1e-3) == "circle");
    CHECK(fiber_by_rotation(r.lengths, cut - 1e-3) == "closed-interval");
}

TEST_CASE("detecting collineations") {
    const QuadLengths q{3, 1, 1.5, 2.2};
    CHECK(detect_collineation(q, collineation_placement(q, "(acb)")) == "(acb)");
    const QuadLengths sq{1, 1.1, 1.2, 1.3};
    CHECK_FALSE(detect_collineation(sq, arc_placement(sq, 1.4, false)).has_value());
    // d on bc extended through b: c = 0, b = l2, d = l3 on the x-axis
    const QuadLengths k{2, 1, 3, 2.5};
    Placement p{{"c", {0, 0, 0}}, {"b", {1, 0, 0}}, {"d", {3, 0, 0}}};
    // a with |ab| = 2 and |ad| = 2.5
    const double ax = (4.0 - 6.25 + 4.0) / 4.0 + 1.0;
    p["a"] = Vec3{ax, std::sqrt(4.0 - (ax - 1.0) * (ax - 1.0)), 0};
    REQUIRE(is_immersed_configuration(quad_linkage(k), p, 1e-9));
    CHECK(detect_collineation(k, p) == "(dbc)");
}

TEST_CASE("local models") {
    const QuadLengths q{5, 5, 1, 5};
    const auto m = quad_local_model(q, "(bdc)");
    CHECK(m.singular_point == "(0,0°,0°)");
    CHECK(m.convex_point == "(0,180°,0°)");
    CHECK(m.exchanged);
    const auto n = quad_local_model(q, "(acd)");
    CHECK(n.split_component);
    CHECK(n.thickened_torus == m.thickened_torus);
    CHECK_FALSE(n.exchanged);
    const QuadLengths c1{2, 1.9, 1.8, 1};
    REQUIRE(quad_chamber(c1).arc_case == "i");
    for (const auto& s : collineation_symbols())
        if (!collineation_feasible(c1, s)) CHECK(error_of([&] { quad_local_model(c1, s); }) == ErrorKind::InfeasibleCollineation);
    CHECK(error_of([&] { quad_local_model(q, "(xyz)"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("open chains") {
    const double inf = INFINITY;
    CHECK(open_chain_descriptor({1, 1}).homotopy_type == "S²");
    CHECK(open_chain_descriptor({1, 1}).homeomorphism);
    CHECK(open_chain_descriptor({inf, 1, inf}).homotopy_type == "S²∨S²∨S²");
    CHECK(open_chain_descriptor({1, 3, 1}).homotopy_type == "S²×S²");
    CHECK(open_chain_descriptor({1, 2, 1}).homotopy_type == "S²×S²");
    CHECK(open_chain_descriptor({1, 1.5, 1}).homotopy_type == "S²∨S²∨S²");
    CHECK(error_of([&] { open_chain_descriptor({1, 1, 1, 1}); }) == ErrorKind::Unsupported);
    CHECK(error_of([&] { open_chain_descriptor({1, inf, 1}); }) == ErrorKind::InvalidArgument);
    CHECK(error_of([&] { open_chain_descriptor({1}); }) == ErrorKind::InvalidArgument);
    // the type changes once as the middle link passes l1 + l3
    std::mt19937_64 g(53);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double l1 = u(g), l3 = u(g);
        int changes = 0;
        std::string prev = open_chain_descriptor({l1, 0.01, l3}).homotopy_type;
        for (int k = 1; k <= 400; ++k) {
            const double l2 = 0.01 + k * (l1 + l3) / 200.0;
            const std::string cur = open_chain_descriptor({l1, l2, l3}).homotopy_type;
            if (cur != prev) {
                ++changes;
                CHECK(l2 >= l1 + l3);
            }
            prev = cur;
        }
        CHECK(changes == 1);
    }
}
