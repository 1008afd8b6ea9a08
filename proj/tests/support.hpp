#pragma once
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "linkspace/cw_complex.hpp"
#include "linkspace/geom.hpp"
#include "linkspace/linkage.hpp"
#include "linkspace/virtual_space.hpp"

namespace testsupport {

using namespace linkspace;

inline Vec3 random_vec(std::mt19937_64& g, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(g), u(g), u(g)};
}

inline Vec3 random_unit(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    for (;;) {
        const Vec3 v{n(g), n(g), n(g)};
        if (norm(v) > 1e-3) return v / norm(v);
    }
}

// Rotation matrix from a random unit quaternion, stored row-major.
struct Rotation {
    double m[3][3];
    Vec3 operator()(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
};

inline Rotation random_rotation(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    double q[4];
    double s = 0.0;
    for (double& x : q) {
        x = n(g);
        s += x * x;
    }
    s = std::sqrt(s);
    const double w = q[0] / s, x = q[1] / s, y = q[2] / s, z = q[3] / s;
    return Rotation{{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                     {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                     {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

// Minimum of |e1(s) - e2(t)| over the grid s, t in {0, h, 2h, ..., 1}. For each
// grid s the squared distance is convex in t, so the grid minimum over t is
// located by ternary search on the index.
inline double grid_distance(const GeomEdge& e1, const GeomEdge& e2, double h = 1e-4) {
    const long n = std::lround(1.0 / h);
    const Vec3 a0 = e1.anchor(), a1 = e1.span(), b0 = e2.anchor(), b1 = e2.span();
    double best = INFINITY;
    for (long i = 0; i <= n; ++i) {
        const Vec3 p = a0 + a1 * (static_cast<double>(i) / n);
        auto f = [&](long j) {
            const Vec3 d = p - (b0 + b1 * (static_cast<double>(j) / n));
            return dot(d, d);
        };
        long lo = 0, hi = n;
        while (hi - lo > 2) {
            const long m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (f(m1) <= f(m2))
                hi = m2;
            else
                lo = m1;
        }
        for (long j = lo; j <= hi; ++j) best = std::min(best, f(j));
    }
    return std::sqrt(best);
}

// Rank over GF(p) of an integer matrix given column-wise as chains.
inline std::size_t rank_mod_p(std::vector<std::vector<long long>> rows, long long p = 1000000007LL) {
    auto inv = [p](long long a) {
        long long r = 1, e = p - 2;
        a %= p;
        if (a < 0) a += p;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (auto& r : rows)
        for (auto& x : r) x = ((x % p) + p) % p;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const long long iv = inv(rows[rank][c]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const long long f = rows[r][c] * iv % p;
            for (std::size_t k = c; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Betti numbers over GF(p) computed straight from the cell boundaries.
inline std::vector<std::size_t> betti_mod_p(const CWComplex& c) {
    const int top = c.dimension();
    std::vector<std::size_t> rk(top + 2, 0);
    for (int k = 1; k <= top; ++k) {
        std::vector<std::vector<long long>> m(c.count(k - 1), std::vector<long long>(c.count(k), 0));
        for (const auto& e : c.boundary_entries(k)) m[e.row][e.col] += e.coeff;
        rk[k] = rank_mod_p(m);
    }
    std::vector<std::size_t> b;
    for (int k = 0; k <= top; ++k) b.push_back(c.count(k) - rk[k] - rk[k + 1]);
    return b;
}

inline Linkage segments_linkage(const std::vector<std::string>& vertices,
                                const std::vector<std::pair<std::string, std::array<std::string, 2>>>& edges,
                                const Placement& p) {
    std::vector<EdgeSpec> specs;
    std::map<std::string, double> lengths;
    for (const auto& [id, ends] : edges) {
        specs.push_back({id, EdgeKind::Segment, ends});
        lengths[id] = distance(p.at(ends[0]), p.at(ends[1]));
    }
    return Linkage(LinkageType(vertices, specs), lengths);
}

// A singular placement together with approach directions: each entry of
// `approaches` displaces some vertices, and the straight path from the
// displaced placement to the limit is an approach path.
struct SingularCase {
    Linkage linkage;
    Placement limit;
    std::vector<std::map<std::string, Vec3>> approaches;
};

inline Placement displaced(const Placement& p, const std::map<std::string, Vec3>& d) {
    Placement out = p;
    for (const auto& [v, off] : d) out[v] += off;
    return out;
}

inline std::vector<std::map<std::string, Vec3>> translations(const std::vector<std::string>& vs, int n,
                                                             std::uint64_t seed, double size = 1e-3) {
    std::mt19937_64 g(seed);
    std::vector<std::map<std::string, Vec3>> out;
    for (int i = 0; i < n; ++i) {
        const Vec3 d = random_unit(g) * size;
        std::map<std::string, Vec3> m;
        for (const auto& v : vs) m[v] = d;
        out.push_back(m);
    }
    return out;
}

// Two segments crossing at their midpoints.
inline SingularCase double_point_case() {
    Placement p{{"a", {-1, 0, 0}}, {"b", {1, 0, 0}}, {"c", {0, -1, 0}}, {"d", {0, 1, 0}}};
    Linkage l = segments_linkage({"a", "b", "c", "d"}, {{"ab", {"a", "b"}}, {"cd", {"c", "d"}}}, p);
    return {l, p, translations({"c", "d"}, 200, 11)};
}

// A segment through the vertex of an elbow, transverse to the elbow plane.
inline SingularCase edge_elbow_transverse_case() {
    Placement p{{"u", {1, 0, 0}}, {"v", {0, 0, 0}}, {"w", {0, 1, 0}}, {"p", {-0.3, -0.2, -1}}, {"q", {0.3, 0.2, 1}}};
    Linkage l = segments_linkage({"u", "v", "w", "p", "q"}, {{"uv", {"u", "v"}}, {"vw", {"v", "w"}}, {"pq", {"p", "q"}}},
                                 p);
    return {l, p, translations({"p", "q"}, 200, 12)};
}

// A segment through the vertex of an elbow, in the elbow plane, with both arms
// on one side. Translations only reach the unthreaded class; the threaded
// classes are reached by moving the segment into the elbow and tilting it so
// it passes above one arm and below the other.
inline SingularCase edge_elbow_coplanar_case() {
    Placement p{{"u", {1, 0, 0}}, {"v", {0, 0, 0}}, {"w", {0, 1, 0}}, {"p", {-1, 1, 0}}, {"q", {1, -1, 0}}};
    Linkage l = segments_linkage({"u", "v", "w", "p", "q"}, {{"uv", {"u", "v"}}, {"vw", {"v", "w"}}, {"pq", {"p", "q"}}},
                                 p);
    auto approaches = translations({"p", "q"}, 200, 13);
    const Vec3 inward = Vec3{1, 1, 0} * (1e-3 / std::sqrt(2.0));
    for (double tilt : {0.5, -0.5}) {
        // p sits at t = -1, q at t = +1 along the edge; lift by tilt * t
        approaches.push_back({{"p", inward + Vec3{0, 0, -tilt}}, {"q", inward + Vec3{0, 0, tilt}}});
    }
    return {l, p, approaches};
}

// Two elbows sharing their vertex position; the arms of the first lie strictly
// on opposite sides of the plane of the second.
inline SingularCase double_elbow_case() {
    Placement p{{"u1", {-1, -1, 1}}, {"v1", {0, 0, 0}}, {"w1", {-1, -2, -1}},
                {"u2", {1, 0, 0}},   {"v2", {0, 0, 0}}, {"w2", {0, 1, 0}}};
    Linkage l = segments_linkage({"u1", "v1", "w1", "u2", "v2", "w2"},
                                 {{"e1", {"v1", "u1"}}, {"f1", {"v1", "w1"}}, {"e2", {"v2", "u2"}}, {"f2", {"v2", "w2"}}},
                                 p);
    return {l, p, translations({"u1", "v1", "w1"}, 200, 14)};
}

// Number of classes among the approaches under labels_identified; approaches
// rejected by virtual_config_from_path are counted in `rejected`.
inline std::size_t count_label_classes(const SingularCase& c, std::size_t* rejected = nullptr) {
    std::vector<VirtualConfiguration> reps;
    std::size_t bad = 0;
    for (const auto& a : c.approaches) {
        VirtualConfiguration vc;
        try {
            vc = virtual_config_from_path(c.linkage, PLPath{{displaced(c.limit, a), c.limit}});
        } catch (const std::exception&) {
            ++bad;
            continue;
        }
        bool known = false;
        for (const auto& r : reps)
            if (labels_identified(c.linkage, r, vc)) {
                known = true;
                break;
            }
        if (!known) reps.push_back(vc);
    }
    if (rejected) *rejected = bad;
    return reps.size();
}

} // namespace testsupport
