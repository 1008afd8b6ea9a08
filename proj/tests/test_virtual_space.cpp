#include <doctest.h>

#include "linkspace/error.hpp"
#include "linkspace/virtual_space.hpp"
#include "support.hpp"

using namespace linkspace;
using namespace testsupport;

namespace {

const Placement kSkew{{"a", {0, 0, 0}}, {"b", {2, 0, 0}}, {"c", {1, -1, 0.5}}, {"d", {1, 1, 0.5}}};

Linkage skew_linkage() { return segments_linkage({"a", "b", "c", "d"}, {{"ab", {"a", "b"}}, {"cd", {"c", "d"}}}, kSkew); }

Placement lift(const Placement& p, double z) {
    Placement q = p;
    q["c"].z = z;
    q["d"].z = z;
    return q;
}

LabelVector labels_of(std::initializer_list<std::pair<EdgePair, int>> xs) {
    LabelVector lv;
    for (const auto& [pr, v] : xs) {
        lv[pr] = v;
        lv[{pr.second, pr.first}] = v;
    }
    return lv;
}

} // namespace

TEST_CASE("path length") {
    const Placement a{{"x", {0, 0, 0}}}, b{{"x", {1, 0, 0}}}, c{{"x", {1, 1, 0}}}, d{{"x", {0, 1, 0}}};
    CHECK(path_length(PLPath{{a, b}}) == 1.0);
    CHECK(path_length(PLPath{{a, b, c, d, a}}) == 4.0);
    const PLPath fine{{a, lerp(a, b, 0.3), lerp(a, b, 0.7), b, c}};
    CHECK(std::abs(path_length(fine) - path_length(PLPath{{a, b, c}})) < 1e-12);
    CHECK(reversed(PLPath{{a, b, c}}).waypoints.front() == c);
}

TEST_CASE("path validity") {
    const Linkage l = skew_linkage();
    CHECK(is_valid_path(l, PLPath{{kSkew, kSkew}}));
    CHECK(is_valid_path(l, PLPath{{kSkew, kSkew}}, 2));
    // the moving bar passes through the other one at the midpoint of the hop
    CHECK_FALSE(is_valid_path(l, PLPath{{kSkew, lift(kSkew, -0.5)}}));
    // and also when the crossing falls between samples
    CHECK_FALSE(is_valid_path(l, PLPath{{lift(kSkew, 0.3), lift(kSkew, -0.7)}}, 64));
    const Placement touching = lift(kSkew, 0.0);
    CHECK(is_valid_path(l, PLPath{{touching, kSkew}}, 64, true));
    CHECK_FALSE(is_valid_path(l, PLPath{{touching, kSkew}}, 64, false));
    CHECK(is_valid_path(l, PLPath{{kSkew, touching}}, 64, true));
    // lengths must hold along the path
    Placement stretched = kSkew;
    stretched["b"].x = 3.0;
    CHECK_FALSE(is_valid_path(l, PLPath{{kSkew, stretched}}));
    CHECK_THROWS_AS(is_valid_path(l, PLPath{{kSkew, kSkew}}, 1), Error);
}

TEST_CASE("path metric examples") {
    const Linkage l = skew_linkage();
    const auto same = path_metric(l, kSkew, kSkew, 100, 0);
    CHECK(same.upper_bound == 0.0);
    CHECK(same.lower_bound == 0.0);

    const Placement nudged = lift(kSkew, 0.51);
    const auto small = path_metric(l, kSkew, nudged, 100, 0);
    CHECK(small.straight);
    CHECK(small.upper_bound == placement_distance(kSkew, nudged));

    // opposite labels across a tiny gap: the straight hop is rejected
    const Placement above = lift(kSkew, 0.01), below = lift(kSkew, -0.01);
    CHECK_FALSE(is_valid_path(l, PLPath{{above, below}}));
    const double gap = placement_distance(above, below);
    const auto r = path_metric(l, above, below, 400, 3);
    CHECK(r.upper_bound > gap);
    CHECK(r.lower_bound == gap);
    // going around costs at least 2 * sqrt(2): a bar must shift by 1 and back
    CHECK(r.capped);
    CHECK(r.upper_bound == 1.0);

    // near the end of the fixed bar a short detour exists
    Placement e_above = above, e_below = below;
    for (auto* p : {&e_above, &e_below}) {
        (*p)["c"].x = 1.9;
        (*p)["d"].x = 1.9;
    }
    const auto e = path_metric(l, e_above, e_below, 400, 3);
    CHECK_FALSE(e.straight);
    REQUIRE_FALSE(e.capped);
    REQUIRE(e.best_path);
    CHECK(e.upper_bound > 2.0 * std::sqrt(2.0) * 0.1);
    CHECK(is_valid_path(l, *e.best_path));
    CHECK(path_length(*e.best_path) == doctest::Approx(e.upper_bound));
    CHECK(is_valid_path(l, reversed(*e.best_path)));
    CHECK(path_length(reversed(*e.best_path)) == doctest::Approx(e.upper_bound));

    CHECK_THROWS_AS(path_metric(l, lift(kSkew, 0.0), kSkew, 10, 0), Error);
}

TEST_CASE("path metric contract") {
    const Linkage l = skew_linkage();
    const Placement above = lift(kSkew, 0.05), below = lift(kSkew, -0.05);
    double prev = 2.0;
    for (long budget : {0L, 20L, 80L, 320L}) {
        const auto r = path_metric(l, above, below, budget, 17);
        CHECK(r.upper_bound >= r.lower_bound);
        CHECK(r.upper_bound <= 1.0);
        CHECK(r.upper_bound <= prev);
        prev = r.upper_bound;
    }
    // deterministic for a fixed seed
    CHECK(path_metric(l, above, below, 200, 5).upper_bound == path_metric(l, above, below, 200, 5).upper_bound);
    CHECK(path_metric_upper_bound(l, above, below, 200, 5) == path_metric(l, above, below, 200, 5).upper_bound);
    // a rotation of a bar is not reachable by translations: the bound stays capped
    Placement turned = kSkew;
    turned["d"] = Vec3{1 + std::sin(0.1) * 2, -1 + std::cos(0.1) * 2, 0.5};
    const auto t = path_metric(l, kSkew, turned, 200, 1);
    CHECK(t.upper_bound <= 1.0);
    CHECK(t.upper_bound >= t.lower_bound);
}

TEST_CASE("virtual configurations from approach paths") {
    const Linkage l = skew_linkage();
    const Placement touching = lift(kSkew, 0.0);
    const auto from_above = virtual_config_from_path(l, PLPath{{lift(kSkew, 0.5), touching}});
    CHECK(from_above.labels.size() == 1);
    CHECK(from_above.labels.begin()->at({"ab", "cd"}) == 1);
    CHECK(from_above.limit == touching);
    const auto from_below = virtual_config_from_path(l, PLPath{{lift(kSkew, -0.5), touching}});
    CHECK(from_below.labels.begin()->at({"ab", "cd"}) == -1);
    CHECK(from_below.limit == from_above.limit);
    CHECK_FALSE(labels_identified(l, from_above, from_below));
    CHECK(labels_identified(l, from_above, from_above));

    // parallel bars sliding together
    const Placement par{{"a", {0, 0, 0}}, {"b", {2, 0, 0}}, {"c", {0.5, 0.5, 0}}, {"d", {2.5, 0.5, 0}}};
    const Linkage lp = segments_linkage({"a", "b", "c", "d"}, {{"ab", {"a", "b"}}, {"cd", {"c", "d"}}}, par);
    Placement meet = par;
    meet["c"].y = 0.0;
    meet["d"].y = 0.0;
    const auto slide = virtual_config_from_path(lp, PLPath{{par, meet}});
    CHECK(slide.labels.size() == 1);
    CHECK(slide.labels.begin()->at({"ab", "cd"}) == 0);

    // an interior that is not embedded is rejected
    CHECK_THROWS_AS(virtual_config_from_path(l, PLPath{{lift(kSkew, 0.5), lift(kSkew, -0.5), touching}}), Error);
    // the target must be singular
    CHECK_THROWS_AS(virtual_config_from_path(l, PLPath{{lift(kSkew, 0.5), lift(kSkew, 0.25)}}), Error);
}

TEST_CASE("tail labels are stable on generic approaches") {
    const auto c = double_point_case();
    for (const auto& a : c.approaches) {
        const auto vc = virtual_config_from_path(c.linkage, PLPath{{displaced(c.limit, a), c.limit}}, 32);
        CHECK(vc.labels.size() == 1);
        CHECK(vc.labels.begin()->at({"ab", "cd"}) != 0);
    }
}

TEST_CASE("identification at an edge-elbow limit") {
    // arms oriented away from the shared vertex
    const Placement x{{"u", {1, 0, 0}}, {"v", {0, 0, 0}}, {"w", {0, 1, 0}}, {"p", {-0.3, -0.2, -1}}, {"q", {0.3, 0.2, 1}}};
    const Linkage l = segments_linkage({"u", "v", "w", "p", "q"}, {{"vu", {"v", "u"}}, {"vw", {"v", "w"}}, {"pq", {"p", "q"}}}, x);
    const VirtualConfiguration m1{x, {labels_of({{{"pq", "vu"}, -1}, {{"pq", "vw"}, -1}})}, std::nullopt};
    const VirtualConfiguration m0{x, {labels_of({{{"pq", "vu"}, 0}, {{"pq", "vw"}, 0}})}, std::nullopt};
    CHECK(labels_identified(l, m1, m0));

    // coplanar: elbow oriented u -> v -> w
    const Placement y{{"u", {1, 0, 0}}, {"v", {0, 0, 0}}, {"w", {0, 1, 0}}, {"p", {-1, 1, 0}}, {"q", {1, -1, 0}}};
    const Linkage k = segments_linkage({"u", "v", "w", "p", "q"}, {{"uv", {"u", "v"}}, {"vw", {"v", "w"}}, {"pq", {"p", "q"}}}, y);
    const VirtualConfiguration pp{y, {labels_of({{{"pq", "uv"}, 1}, {{"pq", "vw"}, 1}})}, std::nullopt};
    const VirtualConfiguration mm{y, {labels_of({{{"pq", "uv"}, -1}, {{"pq", "vw"}, -1}})}, std::nullopt};
    const VirtualConfiguration zz{y, {labels_of({{{"pq", "uv"}, 0}, {{"pq", "vw"}, 0}})}, std::nullopt};
    CHECK_FALSE(labels_identified(k, pp, mm));
    CHECK_FALSE(labels_identified(k, pp, zz));
    CHECK_FALSE(labels_identified(k, mm, zz));
}

TEST_CASE("identification needs a catalogued limit") {
    // three bars through one point
    const Placement x{{"a", {-1, 0, 0}}, {"b", {1, 0, 0}}, {"c", {0, -1, 0}}, {"d", {0, 1, 0}},
                      {"e", {-1, -1, 1}}, {"f", {1, 1, -1}}};
    const Linkage l = segments_linkage({"a", "b", "c", "d", "e", "f"}, {{"ab", {"a", "b"}}, {"cd", {"c", "d"}}, {"ef", {"e", "f"}}}, x);
    const VirtualConfiguration v{x, {label_vector(l.type(), x)}, std::nullopt};
    try {
        labels_identified(l, v, v);
        FAIL("expected an uncatalogued singularity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UncataloguedSingularity);
    }
}
