#include "linkspace/chains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "linkspace/error.hpp"

namespace linkspace {

const std::vector<std::string>& collineation_symbols() {
    static const std::vector<std::string> s = {"(acb)", "(acd)", "(cab)", "(cad)", "(abd)", "(adb)", "(bdc)", "(dbc)"};
    return s;
}

namespace {

constexpr double kPi = std::numbers::pi;

double link(const QuadLengths& q, char u, char v) {
    const std::string key = u < v ? std::string{u, v} : std::string{v, u};
    if (key == "ab") return q.l1;
    if (key == "bc") return q.l2;
    if (key == "cd") return q.l3;
    if (key == "ad") return q.l4;
    throw Error(ErrorKind::InvalidArgument, "not a link: " + key);
}

bool is_link(char u, char v) {
    const std::string key = u < v ? std::string{u, v} : std::string{v, u};
    return key == "ab" || key == "bc" || key == "cd" || key == "ad";
}

// (x y z): y on the link xz, folded along its link to one end of xz
struct Fold {
    char x, y, z;
    char s;  // end of xz joined to y
    char o;  // other end
    char w;  // vertex not in the symbol
};

Fold parse_symbol(const std::string& sym) {
    if (std::find(collineation_symbols().begin(), collineation_symbols().end(), sym) == collineation_symbols().end())
        throw Error(ErrorKind::InvalidArgument, "unknown collineation symbol '" + sym + "'");
    Fold f{sym[1], sym[2], sym[3], 0, 0, 0};
    f.s = is_link(f.y, f.x) ? f.x : f.z;
    f.o = f.s == f.x ? f.z : f.x;
    for (char c : std::string("abcd"))
        if (c != f.x && c != f.y && c != f.z) f.w = c;
    return f;
}

std::array<double, 4> as_array(const QuadLengths& q) { return {q.l1, q.l2, q.l3, q.l4}; }

QuadLengths from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

Vec3 circle_meet(const Vec3& p, double rp, const Vec3& q, double rq, const Vec3& side_ref, bool same_side) {
    const Vec3 pq = q - p;
    const double D = norm(pq);
    const Vec3 u = pq / D;
    const Vec3 n{-u.y, u.x, 0.0};
    const double x = (rp * rp - rq * rq + D * D) / (2.0 * D);
    const double h = std::sqrt(std::max(0.0, rp * rp - x * x));
    const double ref = dot(side_ref - p, n);
    double sgn = ref >= 0.0 ? 1.0 : -1.0;
    if (!same_side) sgn = -sgn;
    return p + u * x + n * (h * sgn);
}

} // namespace

void check_quad_lengths(const QuadLengths& q) {
    const auto a = as_array(q);
    double total = 0.0;
    for (double v : a) {
        if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InfeasibleLengths, "infeasible lengths: sides must be positive");
        total += v;
    }
    for (double v : a)
        if (v > total - v) throw Error(ErrorKind::InfeasibleLengths, "infeasible lengths: a side exceeds the sum of the others");
    for (int m = 0; m < 8; ++m) {
        // l1 + (+/-l2) + (+/-l3) + (+/-l4)
        double s = a[0];
        for (int k = 1; k < 4; ++k) s += ((m >> (k - 1)) & 1) ? -a[k] : a[k];
        if (std::abs(s) <= 1e-12 * total) throw Error(ErrorKind::ChamberWall, "chamber wall: a signed sum of the sides vanishes");
    }
}

bool collineation_feasible(const QuadLengths& q, const std::string& symbol) {
    const Fold f = parse_symbol(symbol);
    const double lk = link(q, f.x, f.z);
    const double ll = link(q, f.y, f.s);
    const double ly = link(q, f.y, f.w);  // from y
    const double lo = link(q, f.o, f.w);  // from the far end of xz
    if (!(lk > ll)) return false;
    const double base = lk - ll;  // |y o|
    return base < ly + lo && ly < base + lo && lo < base + ly;
}

LinkageType quad_type() {
    return LinkageType({"a", "b", "c", "d"},
                       {{"ab", EdgeKind::Segment, {"a", "b"}},
                        {"bc", EdgeKind::Segment, {"b", "c"}},
                        {"cd", EdgeKind::Segment, {"c", "d"}},
                        {"da", EdgeKind::Segment, {"d", "a"}}});
}

Linkage quad_linkage(const QuadLengths& q) {
    return Linkage(quad_type(), {{"ab", q.l1}, {"bc", q.l2}, {"cd", q.l3}, {"da", q.l4}});
}

Placement collineation_placement(const QuadLengths& q, const std::string& symbol) {
    if (!collineation_feasible(q, symbol))
        throw Error(ErrorKind::InfeasibleCollineation, "infeasible collineation " + symbol);
    const Fold f = parse_symbol(symbol);
    Placement p;
    p[std::string(1, f.s)] = Vec3{0, 0, 0};
    p[std::string(1, f.o)] = Vec3{link(q, f.x, f.z), 0, 0};
    p[std::string(1, f.y)] = Vec3{link(q, f.y, f.s), 0, 0};
    const Vec3 above{0, 1, 0};
    p[std::string(1, f.w)] = circle_meet(p.at(std::string(1, f.y)), link(q, f.y, f.w), p.at(std::string(1, f.o)),
                                         link(q, f.o, f.w), above, true);
    return p;
}

Placement arc_placement(const QuadLengths& q, double alpha, bool flipped) {
    Placement p;
    p["a"] = Vec3{0, 0, 0};
    p["b"] = Vec3{q.l1, 0, 0};
    p["d"] = Vec3{q.l4 * std::cos(alpha), q.l4 * std::sin(alpha), 0};
    p["c"] = circle_meet(p["b"], q.l2, p["d"], q.l3, p["a"], flipped);
    return p;
}

std::string fiber_by_rotation(const QuadLengths& q, double alpha, int samples) {
    const LinkageType t = quad_type();
    const Placement base = arc_placement(q, alpha, false);
    const Vec3 b = base.at("b"), d = base.at("d"), c0 = base.at("c");
    const Vec3 axis = normalized(d - b);
    const Vec3 centre = b + axis * dot(c0 - b, axis);
    const Vec3 r0 = c0 - centre;
    const Vec3 r1 = cross(axis, r0);
    for (int k = 0; k < samples; ++k) {
        const double th = 2.0 * kPi * k / samples;
        Placement p = base;
        p["c"] = centre + r0 * std::cos(th) + r1 * std::sin(th);
        if (!is_embedding(t, p, 1e-12)) return "closed-interval";
    }
    return "circle";
}

std::optional<std::string> detect_collineation(const QuadLengths& q, const Placement& p, double tol) {
    const LinkageType t = quad_type();
    require_complete(t, p);
    const double scale = std::max({q.l1, q.l2, q.l3, q.l4, 1.0});
    for (const auto& sym : collineation_symbols()) {
        const Vec3 x = p.at(std::string(1, sym[1]));
        const Vec3 y = p.at(std::string(1, sym[2]));
        const Vec3 z = p.at(std::string(1, sym[3]));
        const Vec3 xz = z - x;
        const double len2 = dot(xz, xz);
        if (len2 == 0.0) continue;
        const double s = dot(y - x, xz) / len2;
        if (s < 0.0 || s > 1.0) continue;
        if (distance(x + xz * s, y) <= tol * scale) return sym;
    }
    return std::nullopt;
}

namespace {

std::vector<std::array<int, 4>> dihedral_images() {
    std::vector<std::array<int, 4>> out;
    for (int refl = 0; refl < 2; ++refl)
        for (int k = 0; k < 4; ++k) {
            std::array<int, 4> src{};
            for (int i = 0; i < 4; ++i) src[i] = refl ? ((4 - i + k) % 4) : ((i + k) % 4);
            out.push_back(src);
        }
    return out;
}

bool self_intersects(const QuadLengths& q, double alpha) {
    return !is_embedding(quad_type(), arc_placement(q, alpha, true), 1e-12);
}

} // namespace

QuadReport quad_chamber(const QuadLengths& in) {
    check_quad_lengths(in);
    QuadReport rep;
    rep.input = in;
    const auto a = as_array(in);

    // prefer the strict ordering, then the weak one, then anything; ties go to the
    // lexicographically largest (l1, l2, l4, l3)
    int best_tier = 3;
    std::tuple<double, double, double, double> best_key{-1, -1, -1, -1};
    std::array<int, 4> best_src{0, 1, 2, 3};
    for (const auto& src : dihedral_images()) {
        const double l1 = a[src[0]], l2 = a[src[1]], l3 = a[src[2]], l4 = a[src[3]];
        int tier = 2;
        if (l4 < l1 && l1 > l2 && l2 > l3) tier = 0;
        else if (l4 <= l1 && l1 >= l2 && l2 >= l3) tier = 1;
        const auto key = std::make_tuple(l1, l2, l4, l3);
        if (tier < best_tier || (tier == best_tier && key > best_key)) {
            best_tier = tier;
            best_key = key;
            best_src = src;
        }
    }
    for (int i = 0; i < 4; ++i) rep.source[i] = best_src[i] + 1;
    rep.lengths = from_array({a[best_src[0]], a[best_src[1]], a[best_src[2]], a[best_src[3]]});
    rep.normalized = best_tier == 0;
    const QuadLengths& q = rep.lengths;

    rep.ineq_sum = q.l1 + q.l4 < q.l2 + q.l3;
    rep.ineq_diff = std::abs(q.l2 - q.l3) < q.l1 - q.l4;
    if (rep.ineq_sum && rep.ineq_diff) rep.arc_case = "i";
    else if (!rep.ineq_sum && rep.ineq_diff) rep.arc_case = "ii";
    else if (rep.ineq_sum && !rep.ineq_diff) rep.arc_case = "iii";
    else rep.arc_case = "iv";

    for (const auto& s : collineation_symbols())
        if (collineation_feasible(q, s)) rep.collineations.push_back(s);

    // arc of admissible d, parameterized by the angle dab
    const double r = std::abs(q.l2 - q.l3), R = q.l2 + q.l3;
    auto angle_for = [&](double L) {
        return std::acos(std::clamp((q.l1 * q.l1 + q.l4 * q.l4 - L * L) / (2.0 * q.l1 * q.l4), -1.0, 1.0));
    };
    const bool inner_circle = r > std::abs(q.l1 - q.l4);
    const bool outer_circle = R < q.l1 + q.l4;
    rep.alpha_min = inner_circle ? angle_for(r) : 0.0;
    rep.alpha_max = outer_circle ? angle_for(R) : kPi;

    const std::string low_label = inner_circle ? (q.l2 > q.l3 ? "(bdc)" : "(dbc)") : (q.l1 > q.l4 ? "(adb)" : "(abd)");

    // interior breakpoints where the flipped planar position starts or stops
    // crossing itself
    const int N = 4000;
    const double span = rep.alpha_max - rep.alpha_min;
    std::vector<double> alphas;
    for (int j = 0; j < N; ++j) alphas.push_back(rep.alpha_max - (j + 0.5) / N * span);
    std::vector<double> breaks;
    bool prev = self_intersects(q, alphas[0]);
    for (int j = 1; j < N; ++j) {
        const bool cur = self_intersects(q, alphas[j]);
        if (cur != prev) {
            double hi = alphas[j - 1], lo = alphas[j];
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (hi + lo);
                (self_intersects(q, mid) == prev ? hi : lo) = mid;
            }
            breaks.push_back(0.5 * (hi + lo));
        }
        prev = cur;
    }

    rep.fiber_schedule.push_back({FiberEntry::Kind::Endpoint, rep.alpha_max, rep.alpha_max, "point", "aligned"});
    std::vector<double> knots{rep.alpha_max};
    knots.insert(knots.end(), breaks.begin(), breaks.end());
    knots.push_back(rep.alpha_min);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double mid = 0.5 * (knots[k] + knots[k + 1]);
        rep.fiber_schedule.push_back({FiberEntry::Kind::Span, knots[k], knots[k + 1],
                                      self_intersects(q, mid) ? "closed-interval" : "circle", std::nullopt});
        if (k + 2 < knots.size()) {
            const double at = knots[k + 1];
            auto sym = detect_collineation(q, arc_placement(q, at, true), 1e-7);
            rep.fiber_schedule.push_back({FiberEntry::Kind::Transition, at, at, "circle", sym.value_or("contact")});
        }
    }
    rep.fiber_schedule.push_back({FiberEntry::Kind::Endpoint, rep.alpha_min, rep.alpha_min, "point", low_label});

    rep.schedule_derived = !(rep.arc_case == "iv" && rep.collineations == std::vector<std::string>{"(acd)", "(bdc)"});
    return rep;
}

std::string QuadReport::schedule_text() const {
    std::string out;
    for (std::size_t i = 0; i < fiber_schedule.size(); ++i) {
        const auto& e = fiber_schedule[i];
        std::string part;
        switch (e.kind) {
            case FiberEntry::Kind::Endpoint:
                part = "point";
                if (e.at && *e.at != "aligned") part += " at " + *e.at;
                break;
            case FiberEntry::Kind::Span:
                part = e.fiber == "closed-interval" ? "interval" : e.fiber;
                break;
            case FiberEntry::Kind::Transition:
                part = e.fiber + " at " + e.at.value_or("contact");
                break;
        }
        out += (i ? " -> " : "") + part;
    }
    return out;
}

QuadLocalModel quad_local_model(const QuadLengths& q, const std::string& symbol) {
    parse_symbol(symbol);
    check_quad_lengths(q);
    if (!collineation_feasible(q, symbol))
        throw Error(ErrorKind::InfeasibleCollineation, "infeasible collineation " + symbol);
    QuadLocalModel m;
    m.symbol = symbol;
    static const std::vector<std::string> swap = {"(abd)", "(adb)", "(bdc)", "(dbc)"};
    m.exchanged = std::find(swap.begin(), swap.end(), symbol) != swap.end();
    if (m.exchanged) m.exchange_rule = "exchange the roles of bd and ac";
    return m;
}

OpenChainDescriptor open_chain_descriptor(const std::vector<double>& lengths) {
    if (lengths.size() > 3) throw Error(ErrorKind::Unsupported, "unsupported: open chains with more than three links");
    if (lengths.size() < 2) throw Error(ErrorKind::InvalidArgument, "an open chain needs two or three links");
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double v = lengths[i];
        if (std::isnan(v) || !(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "link lengths must be positive");
        if (std::isinf(v) && i != 0 && i + 1 != lengths.size())
            throw Error(ErrorKind::InvalidArgument, "only the end links may be infinite");
    }
    OpenChainDescriptor d;
    d.links = lengths.size();
    if (lengths.size() == 2) {
        d.homotopy_type = "S²";
        d.coordinates = "(θ,φ)";
        d.homeomorphism = true;
        return d;
    }
    const bool unbounded = std::isinf(lengths[0]) || std::isinf(lengths[2]);
    d.coordinates = "(θ₁,φ₁,θ₂,φ₂)";
    if (unbounded || lengths[0] + lengths[2] > lengths[1]) {
        d.homotopy_type = "S²∨S²∨S²";
        d.homeomorphism = false;
    } else {
        d.homotopy_type = "S²×S²";
        d.homeomorphism = true;
    }
    return d;
}

} // namespace linkspace
