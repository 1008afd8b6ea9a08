#include "linkspace/lines.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "linkspace/error.hpp"

namespace linkspace {

OrientedLine line_normal_form(const Point3& anchor, const Vec3& direction) {
    if (!(norm(direction) > 0.0)) throw Error(ErrorKind::DegenerateGeometry, "zero direction");
    OrientedLine l;
    l.v = normalized(direction);
    l.x = anchor - l.v * dot(anchor, l.v);
    return l;
}

Linkage lines_linkage(std::size_t n) {
    std::vector<std::string> vs;
    std::vector<EdgeSpec> es;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::string id = "l" + std::to_string(i);
        vs.push_back(id + ".o");
        vs.push_back(id + ".d");
        es.push_back({id, EdgeKind::Line, {id + ".o", id + ".d"}});
    }
    return Linkage(LinkageType(vs, es), {});
}

Placement lines_placement(const std::vector<OrientedLine>& lines, double scale) {
    Placement p;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string id = "l" + std::to_string(i + 1);
        p[id + ".o"] = lines[i].x * scale;
        p[id + ".d"] = lines[i].x * scale + lines[i].v;
    }
    return p;
}

VirtualConfiguration retract_to_origin(const std::vector<OrientedLine>& lines, const LabelVector& labels, double tol) {
    if (lines.empty()) throw Error(ErrorKind::InvalidArgument, "no lines");
    const Linkage l = lines_linkage(lines.size());
    const Placement start = lines_placement(lines, 1.0);
    const LabelVector actual = label_vector(l.type(), start, tol);
    for (const auto& [pair, v] : labels) {
        auto it = actual.find(pair);
        if (it == actual.end() || it->second != v)
            throw Error(ErrorKind::InconsistentLabels, "inconsistent labels for pair (" + pair.first + "," + pair.second + ")");
    }
    if (labels.size() != actual.size() && !labels.empty())
        throw Error(ErrorKind::InconsistentLabels, "inconsistent labels: label domain differs from the pair set");

    VirtualConfiguration vc;
    vc.limit = lines_placement(lines, 0.0);
    vc.labels.insert(actual);
    bool through_origin = true;
    for (const auto& ln : lines)
        if (norm(ln.x) > 0.0) through_origin = false;
    if (!through_origin && is_embedding(l.type(), start, tol)) {
        // the dilation path x -> t x, which keeps every label
        PLPath w;
        for (int k = 0; k <= 12; ++k) w.waypoints.push_back(lines_placement(lines, std::ldexp(1.0, -k)));
        w.waypoints.push_back(vc.limit);
        vc.witness = w;
    }
    return vc;
}

namespace {

constexpr double kChartTol = 1e-12;

double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    if (a >= 0.0 && a < two_pi) return a;
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

double angle_gap(double a, double b) {
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, 2.0 * std::numbers::pi - d);
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

TwoLineChart two_line_canonical(const TwoLineChart& c) {
    if (c.epsilon < 0.0) throw Error(ErrorKind::InvalidArgument, "negative epsilon");
    TwoLineChart out = c;
    out.theta = wrap_angle(c.theta);
    out.phi = wrap_angle(c.phi);
    bool parallel = false;
    if (angle_gap(out.theta, 0.0) <= kChartTol) {
        out.theta = 0.0;
        parallel = true;
    } else if (angle_gap(out.theta, std::numbers::pi) <= kChartTol) {
        out.theta = std::numbers::pi;
        parallel = true;
    }
    if (parallel) {
        out.x = 0.0;
        if (out.epsilon <= kChartTol) {
            out.epsilon = 0.0;
            out.phi = 0.0;
        }
    }
    return out;
}

bool charts_equivalent(const TwoLineChart& a, const TwoLineChart& b) {
    const TwoLineChart x = two_line_canonical(a), y = two_line_canonical(b);
    return std::abs(x.epsilon - y.epsilon) <= kChartTol && std::abs(x.x - y.x) <= kChartTol &&
           angle_gap(x.phi, y.phi) <= kChartTol && angle_gap(x.theta, y.theta) <= kChartTol;
}

PairSpaceDescriptor pair_space_descriptor(EdgeKind k1, EdgeKind k2, std::optional<double> segment_length) {
    if (static_cast<int>(k1) < static_cast<int>(k2)) std::swap(k1, k2);
    PairSpaceDescriptor d;
    d.kinds = std::string(edge_kind_name(k1)) + "/" + edge_kind_name(k2);
    d.completion_equals_blowup = true;
    const std::string base = "([0,∞)×ℝ×S¹×S¹)/~";
    const std::vector<std::string> relations = {
        "(a) (ε,x₁,φ,θ) ~ (ε,x₂,φ,θ) for θ ∈ {0,π}, ε > 0",
        "(b) (0,x₁,φ₁,θ) ~ (0,x₂,φ₂,θ) for θ ∈ {0,π}",
    };
    if (k1 == EdgeKind::Line && k2 == EdgeKind::Line) {
        d.chart = base;
        d.relations = relations;
        d.homotopy_type = "S²∨S²∨S¹";
        d.construction = "tightened torus times [0,∞), with parallel contacts collapsed";
        d.framed_factors = "ℝ³×SO(3)×S¹×" + base;
        return d;
    }
    if (k1 == EdgeKind::Line && k2 == EdgeKind::HalfLine) {
        d.chart = "W ⊆ " + base + ", θ ∈ {0,π} ⇒ ℝ ~ *";
        d.relations = relations;
        d.slit_condition = "ε=0 ⇒ x ≤ 0";
        d.construction = "pushout of Z and the completed two-line space over {θ ∉ {0,π} ⇒ 0 < x}";
        d.framed_factors = "Ĉ_red×Spin(3)×S¹";
        return d;
    }
    if (k1 == EdgeKind::Line && k2 == EdgeKind::Segment) {
        if (!segment_length || !(*segment_length > 0.0))
            throw Error(ErrorKind::InvalidArgument, "line/segment descriptor needs a positive segment length");
        const std::string a = shortest(*segment_length);
        d.chart = "W ⊆ " + base + ", θ ∈ {0,π} ⇒ ℝ ~ *";
        d.relations = relations;
        d.slit_condition = "x ∉ (0," + a + ")";
        d.construction = "pushout of Z and the completed two-line space over {θ ∉ {0,π} ⇒ x ∈ (0," + a + ")}";
        d.framed_factors = "Ĉ_red×Spin(3)×S¹";
        return d;
    }
    if (k1 == EdgeKind::HalfLine && k2 == EdgeKind::HalfLine) {
        d.chart = "(v,w) ∈ ℝ³×S²";
        d.homotopy_type = "S²";
        d.construction = "X×S² ∪ (ℝ³∖X)×closure(S²∖γ), X the axis of the first half-line";
        d.framed_factors = "ℝ³×SO(3)×(v,w)";
        return d;
    }
    throw Error(ErrorKind::Unsupported, "unsupported pair " + d.kinds);
}

CWComplex build_two_line_complex() {
    CWComplex c;
    c.add_cell(0, "N");
    c.add_cell(0, "S");
    for (const char* s : {"+", "-"}) {
        const std::string p = std::string(s) + ":";
        c.add_cell(1, p + "m0", {{"N", 1}, {"S", -1}});
        c.add_cell(1, p + "m1", {{"N", 1}, {"S", -1}});
    }
    for (const char* s : {"+", "-"}) {
        const std::string p = std::string(s) + ":";
        c.add_cell(2, p + "D0", {{p + "m1", 1}, {p + "m0", -1}});
        c.add_cell(2, p + "D1", {{p + "m0", 1}, {p + "m1", -1}});
    }
    return c;
}

namespace {

using three_lines::CellRef;

const std::vector<std::array<int, 3>>& copies() {
    static const std::vector<std::array<int, 3>> all = [] {
        std::vector<std::array<int, 3>> v;
        for (int a : {1, -1})
            for (int b : {1, -1})
                for (int c : {1, -1}) v.push_back({a, b, c});
        return v;
    }();
    return all;
}

std::string copy_prefix(const std::array<int, 3>& d, const std::vector<int>& lost) {
    std::string s;
    for (int k = 0; k < 3; ++k) {
        const bool gone = std::find(lost.begin(), lost.end(), k) != lost.end();
        s += gone ? '0' : (d[k] > 0 ? '+' : '-');
    }
    return s;
}

std::string cell_id(const std::array<int, 3>& d, const CellRef& r, ZeroCellRule rule) {
    return copy_prefix(d, three_lines::lost_coordinates(r, rule)) + ":" + r.name();
}

int ref_dim(const CellRef& r) {
    return (r.torus.empty() ? 0 : three_lines::torus().dim_of(r.torus)) + three_lines::square().dim_of(r.square);
}

} // namespace

CWComplex build_three_line_complex(ZeroCellRule rule) {
    const auto& T = three_lines::torus();
    const auto& S = three_lines::square();
    const auto cells = three_lines::surviving_cells();
    CWComplex out;
    for (int k = 0; k <= 4; ++k)
        for (const auto& d : copies())
            for (const auto& ref : cells) {
                if (ref_dim(ref) != k) continue;
                Chain bd;
                if (!ref.torus.empty()) {
                    Chain prod;
                    for (const auto& [f, c] : T.boundary_of(ref.torus)) prod[f + "*" + ref.square] += c;
                    const long sign = T.dim_of(ref.torus) % 2 == 0 ? 1 : -1;
                    for (const auto& [f, c] : S.boundary_of(ref.square)) prod[ref.torus + "*" + f] += sign * c;
                    for (const auto& [name, c] : prod) {
                        const auto star = name.find('*');
                        for (const auto& [img, m] : three_lines::collapse(name.substr(0, star), name.substr(star + 1))) {
                            long& slot = bd[cell_id(d, img, rule)];
                            slot += c * m;
                        }
                    }
                    for (auto it = bd.begin(); it != bd.end();) it = it->second == 0 ? bd.erase(it) : std::next(it);
                }
                const std::string id = cell_id(d, ref, rule);
                if (out.has_cell(id)) {
                    if (out.boundary_of(id) != bd)
                        throw Error(ErrorKind::NotAChainComplex, "identified cells disagree on their boundary: " + id);
                    continue;
                }
                out.add_cell(k, id, bd);
            }
    return out;
}

std::vector<Chain> three_line_fundamental_cycles() {
    std::vector<Chain> out;
    for (const auto& d : copies()) {
        Chain c;
        for (const char* t : {"K", "L"})
            for (const char* s : {"A", "B", "C", "D"})
                c[cell_id(d, CellRef{t, s}, ZeroCellRule::AllCopies)] = 1;
        out.push_back(c);
    }
    return out;
}

} // namespace linkspace
