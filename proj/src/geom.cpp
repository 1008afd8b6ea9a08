#include "linkspace/geom.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "linkspace/error.hpp"

namespace linkspace {

namespace {

using boost::multiprecision::cpp_rational;

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(const cpp_rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// sign of (r . (d1 x d2)) where every vector is a difference of two input points.
int triple_sign(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2,
                const Vec3& p3, const Vec3& q3) {
    const Vec3 a = q1 - p1, b = q2 - p2, c = q3 - p3;
    const double det = a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
                       a.z * (b.x * c.y - b.y * c.x);
    const double perm = std::abs(a.x) * (std::abs(b.y * c.z) + std::abs(b.z * c.y)) +
                        std::abs(a.y) * (std::abs(b.x * c.z) + std::abs(b.z * c.x)) +
                        std::abs(a.z) * (std::abs(b.x * c.y) + std::abs(b.y * c.x));
    // differences are rounded too, so the bound is looser than Shewchuk's orient3d
    const double bound = 1e-14 * perm;
    if (det > bound) return 1;
    if (det < -bound) return -1;

    auto diff = [](double u, double v) { return cpp_rational(u) - cpp_rational(v); };
    const cpp_rational ax = diff(q1.x, p1.x), ay = diff(q1.y, p1.y), az = diff(q1.z, p1.z);
    const cpp_rational bx = diff(q2.x, p2.x), by = diff(q2.y, p2.y), bz = diff(q2.z, p2.z);
    const cpp_rational cx = diff(q3.x, p3.x), cy = diff(q3.y, p3.y), cz = diff(q3.z, p3.z);
    return sign_of(ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx));
}

double clamp_to(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

} // namespace

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::DegenerateGeometry, "zero or non-finite vector");
    return v / n;
}

const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Segment: return "segment";
        case EdgeKind::HalfLine: return "half-line";
        case EdgeKind::Line: return "line";
    }
    return "segment";
}

GeomEdge GeomEdge::from_points(EdgeKind kind, const Point3& a, const Point3& b) {
    if (!(norm(b - a) > 0.0)) throw Error(ErrorKind::DegenerateGeometry, "edge with coincident defining points");
    return GeomEdge(kind, a, b);
}

GeomEdge GeomEdge::segment(const Point3& a, const Point3& b) { return from_points(EdgeKind::Segment, a, b); }
GeomEdge GeomEdge::half_line(const Point3& a, const Point3& b) { return from_points(EdgeKind::HalfLine, a, b); }
GeomEdge GeomEdge::line(const Point3& a, const Point3& b) { return from_points(EdgeKind::Line, a, b); }

Dir3 GeomEdge::direction() const { return normalized(span()); }

double GeomEdge::length() const { return kind_ == EdgeKind::Segment ? norm(span()) : kInf; }

double GeomEdge::lower() const { return kind_ == EdgeKind::Line ? -kInf : 0.0; }
double GeomEdge::upper() const { return kind_ == EdgeKind::Segment ? 1.0 : kInf; }

GeomEdge GeomEdge::reversed() const {
    switch (kind_) {
        case EdgeKind::Segment: return GeomEdge(kind_, tip_, anchor_);
        case EdgeKind::HalfLine:
            throw Error(ErrorKind::InvalidArgument, "a half-line has no reversal with the same point set");
        case EdgeKind::Line: return GeomEdge(kind_, anchor_, anchor_ - span());
    }
    return *this;
}

bool is_interior(const GeomEdge& e, double s) {
    switch (e.kind()) {
        case EdgeKind::Segment: return s > kInteriorFuzz && s < 1.0 - kInteriorFuzz;
        case EdgeKind::HalfLine: return s > kInteriorFuzz;
        case EdgeKind::Line: return true;
    }
    return false;
}

ClosestPair closest_points(const GeomEdge& e1, const GeomEdge& e2, double tol) {
    const Vec3 d1 = e1.span(), d2 = e2.span();
    const Vec3 r = e1.anchor() - e2.anchor();
    const double A = dot(d1, d1), B = dot(d1, d2), C = dot(d2, d2);
    const double D = dot(d1, r), E = dot(d2, r);
    const double lo1 = e1.lower(), hi1 = e1.upper(), lo2 = e2.lower(), hi2 = e2.upper();

    const Vec3 n = cross(d1, d2);
    const double sin_angle = norm(n) / std::sqrt(A * C);
    const bool parallel = sin_angle <= 1e-12;

    double s = 0.0, t = 0.0;
    if (parallel) {
        const Vec3 u = d1 / std::sqrt(A);
        const double len1 = std::sqrt(A);
        const double o1 = dot(e1.anchor(), u), o2 = dot(e2.anchor(), u);
        const double k2 = dot(d2, u);  // nonzero, signed
        auto x1 = [&](double p) { return o1 + p * len1; };
        auto x2 = [&](double p) { return o2 + p * k2; };
        const double a_lo = x1(lo1), a_hi = x1(hi1);
        double b_lo = k2 > 0 ? x2(lo2) : x2(hi2);
        double b_hi = k2 > 0 ? x2(hi2) : x2(lo2);
        if (std::isnan(b_lo)) b_lo = -kInf;
        if (std::isnan(b_hi)) b_hi = kInf;
        double xa, xb;
        if (a_hi >= b_lo && b_hi >= a_lo) {
            double xs = std::max(a_lo, b_lo);
            if (xs == -kInf) xs = std::min(o1, std::min(a_hi, b_hi));
            xa = xb = xs;
        } else if (a_hi < b_lo) {
            xa = a_hi;
            xb = b_lo;
        } else {
            xa = a_lo;
            xb = b_hi;
        }
        s = (xa - o1) / len1;
        t = (xb - o2) / k2;
        // several t may realize xb only when k2 == 0, excluded above
    } else {
        const double den = A * C - B * B;
        struct Cand { double s, t; };
        std::vector<Cand> cands;
        const double s0 = (B * E - C * D) / den;
        const double t0 = (A * E - B * D) / den;
        if (s0 >= lo1 && s0 <= hi1 && t0 >= lo2 && t0 <= hi2) cands.push_back({s0, t0});
        for (double sb : {lo1, hi1}) {
            if (!std::isfinite(sb)) continue;
            cands.push_back({sb, clamp_to((B * sb + E) / C, lo2, hi2)});
        }
        for (double tb : {lo2, hi2}) {
            if (!std::isfinite(tb)) continue;
            cands.push_back({clamp_to((B * tb - D) / A, lo1, hi1), tb});
        }
        double best = kInf;
        for (const auto& c : cands) {
            const double dd = dot(e2.at(c.t) - e1.at(c.s), e2.at(c.t) - e1.at(c.s));
            const bool better = dd < best ||
                                (dd == best && (c.s < s || (c.s == s && c.t < t)));
            if (better) {
                best = dd;
                s = c.s;
                t = c.t;
            }
        }
    }

    ClosestPair cp;
    cp.s = s;
    cp.t = t;
    cp.a = e1.at(s);
    cp.b = e2.at(t);
    cp.w = cp.b - cp.a;
    cp.a_interior = is_interior(e1, s);
    cp.b_interior = is_interior(e2, t);
    cp.parallel = parallel;
    if (parallel) {
        cp.coplanar = true;
    } else {
        const double carrier_gap = std::abs(dot(e2.anchor() - e1.anchor(), n)) / norm(n);
        cp.coplanar = carrier_gap <= tol;
    }
    return cp;
}

int linking_number(const GeomEdge& e1, const GeomEdge& e2, double tol) {
    const ClosestPair cp = closest_points(e1, e2, tol);
    if (cp.dist() <= tol || cp.parallel || cp.coplanar) return 0;
    if (!cp.a_interior || !cp.b_interior) return 0;
    // w is parallel to d1 x d2 here, so sgn(w.(d1 x d2)) = sgn((a2 - a1).(d1 x d2))
    return triple_sign(e1.anchor(), e2.anchor(), e1.anchor(), e1.tip(), e2.anchor(), e2.tip());
}

int orientation_sign(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
    return triple_sign(p, q, p, r, p, s);
}

} // namespace linkspace
