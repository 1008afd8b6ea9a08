#pragma once
#include <array>
#include <cmath>
#include <limits>

namespace linkspace {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kInteriorFuzz = 1e-12;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr bool operator==(const Vec3& o) const = default;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Throws DegenerateGeometry on the zero vector.
Vec3 normalized(const Vec3& v);

using Point3 = Vec3;
using Dir3 = Vec3;

enum class EdgeKind { Segment, HalfLine, Line };

const char* edge_kind_name(EdgeKind k);

// A segment, half-line or line. Stored as an anchor and a second point (tip):
// for a segment the tip is the other endpoint, otherwise a point fixing the
// direction. Points are anchor + s * (tip - anchor), with s in [0,1], [0,inf)
// or all of R.
class GeomEdge {
public:
    static GeomEdge segment(const Point3& a, const Point3& b);
    static GeomEdge half_line(const Point3& anchor, const Point3& through);
    static GeomEdge line(const Point3& anchor, const Point3& through);
    static GeomEdge from_points(EdgeKind kind, const Point3& a, const Point3& b);

    EdgeKind kind() const { return kind_; }
    const Point3& anchor() const { return anchor_; }
    const Point3& tip() const { return tip_; }
    Vec3 span() const { return tip_ - anchor_; }
    Dir3 direction() const;
    // Segment length; infinity for unbounded edges.
    double length() const;
    Point3 at(double s) const { return anchor_ + span() * s; }
    double lower() const;
    double upper() const;

    GeomEdge reversed() const;

private:
    GeomEdge(EdgeKind k, const Point3& a, const Point3& t) : kind_(k), anchor_(a), tip_(t) {}
    EdgeKind kind_;
    Point3 anchor_;
    Point3 tip_;
};

struct ClosestPair {
    Point3 a;
    Point3 b;
    Vec3 w;          // b - a
    double s = 0.0;  // parameter on the first edge
    double t = 0.0;  // parameter on the second edge
    bool a_interior = false;
    bool b_interior = false;
    bool coplanar = false;
    bool parallel = false;
    double dist() const { return norm(w); }
};

ClosestPair closest_points(const GeomEdge& e1, const GeomEdge& e2, double tol = kDefaultTol);

bool is_interior(const GeomEdge& e, double s);

int linking_number(const GeomEdge& e1, const GeomEdge& e2, double tol = kDefaultTol);

// Sign of det[q-p, r-p, s-p]; exact.
int orientation_sign(const Point3& p, const Point3& q, const Point3& r, const Point3& s);

} // namespace linkspace
