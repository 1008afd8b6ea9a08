#include "linkspace/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "linkspace/error.hpp"

namespace linkspace {

const char* feature_kind_name(FeatureKind k) {
    switch (k) {
        case FeatureKind::MultiPoint: return "multi-point";
        case FeatureKind::PairwiseMeetings: return "pairwise-meetings";
        case FeatureKind::EdgeThroughVertex: return "edge-through-vertex";
        case FeatureKind::VertexVertex: return "vertex-vertex";
        case FeatureKind::CoincidingEdges: return "coinciding-edges";
        case FeatureKind::ConstrainedCombination: return "constrained-combination";
    }
    return "feature";
}

namespace {

constexpr double kAngleTol = 1e-9;

struct Dsu {
    std::vector<int> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int v) { return p[v] == v ? v : p[v] = find(p[v]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

int sign_tol(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

// Unit direction of an edge leaving vertex v.
Vec3 arm_dir(const LinkageType& t, const Placement& p, const std::string& edge_id, const std::string& v) {
    const EdgeSpec& e = t.edge(edge_id);
    const std::string& other = e.ends[0] == v ? e.ends[1] : e.ends[0];
    return normalized(p.at(other) - p.at(v));
}

// +1 when the edge's own orientation points away from v.
int arm_orientation(const LinkageType& t, const std::string& edge_id, const std::string& v) {
    return t.edge(edge_id).ends[0] == v ? 1 : -1;
}

struct Crossing {
    EdgePair pair;
    Point3 at;
};

struct Coincidence {
    EdgePair pair;
    std::optional<std::string> vertex;  // set for a folded elbow
    bool absorbed = false;
};

std::set<std::string> support_of(const SingularFeature& f) {
    std::set<std::string> s;
    for (const auto& e : f.edges) s.insert("e:" + e);
    for (const auto& v : f.vertices) s.insert("v:" + v);
    return s;
}

void fill_edge_elbow(SingularFeature& f, const Placement& p, const LinkageType& t, const std::string& through,
                     const std::string& v) {
    const Vec3 u = geom_edge(t, p, through).direction();
    const Vec3 a = arm_dir(t, p, f.edges[1], v);
    const Vec3 b = arm_dir(t, p, f.edges[2], v);
    const Vec3 ab = cross(a, b);
    f.closed_elbow = norm(ab) <= kAngleTol && dot(a, b) > 0.0;
    f.straight_elbow = norm(ab) <= kAngleTol && dot(a, b) < 0.0;
    f.along_arm = norm(cross(u, a)) <= kAngleTol || norm(cross(u, b)) <= kAngleTol;
    f.coplanar = f.closed_elbow || f.straight_elbow || std::abs(dot(u, ab)) <= kAngleTol;
    const Vec3 pa = a - u * dot(a, u), pb = b - u * dot(b, u);
    f.arms_same_side = dot(pa, pb) > 0.0;
}

void fill_double_elbow(SingularFeature& f, const Placement& p, const LinkageType& t) {
    const Vec3 p1 = arm_dir(t, p, f.edges[0], f.vertices[0]);
    const Vec3 q1 = arm_dir(t, p, f.edges[1], f.vertices[0]);
    const Vec3 p2 = arm_dir(t, p, f.edges[2], f.vertices[1]);
    const Vec3 q2 = arm_dir(t, p, f.edges[3], f.vertices[1]);
    const Vec3 n1 = cross(p1, q1), n2 = cross(p2, q2);
    const bool closed1 = norm(n1) <= kAngleTol && dot(p1, q1) > 0.0;
    const bool closed2 = norm(n2) <= kAngleTol && dot(p2, q2) > 0.0;
    f.closed_elbow = closed1 || closed2;
    f.straight_elbow = (norm(n1) <= kAngleTol && !closed1) || (norm(n2) <= kAngleTol && !closed2);
    for (const Vec3& x : {p1, q1})
        for (const Vec3& y : {p2, q2})
            if (norm(cross(x, y)) <= kAngleTol && dot(x, y) > 0.0) f.along_arm = true;
    if (f.closed_elbow || f.straight_elbow) return;
    const Vec3 m1 = n1 / norm(n1), m2 = n2 / norm(n2);
    f.side_signs = {sign_tol(dot(p1, m2), kAngleTol), sign_tol(dot(q1, m2), kAngleTol),
                    sign_tol(dot(p2, m1), kAngleTol), sign_tol(dot(q2, m1), kAngleTol)};
    f.opposite_sides = f.side_signs[0] * f.side_signs[1] == -1 || f.side_signs[2] * f.side_signs[3] == -1;
    f.coplanar = f.side_signs[0] == 0 && f.side_signs[1] == 0;
}

bool on_segment_cycle(const LinkageType& t, const std::string& v) {
    // v lies on a simple cycle of segments iff removing one incident segment keeps
    // its ends connected
    const auto inc = t.incident_edges(v);
    for (const auto& eid : inc) {
        const EdgeSpec& e = t.edge(eid);
        if (e.kind != EdgeKind::Segment) continue;
        const std::string target = e.ends[0] == v ? e.ends[1] : e.ends[0];
        std::set<std::string> seen{v};
        std::vector<std::string> stack{v};
        while (!stack.empty()) {
            const std::string x = stack.back();
            stack.pop_back();
            for (const auto& f : t.incident_edges(x)) {
                if (f == eid) continue;
                const EdgeSpec& fe = t.edge(f);
                if (fe.kind != EdgeKind::Segment) continue;
                const std::string y = fe.ends[0] == x ? fe.ends[1] : fe.ends[0];
                if (y == target) return true;
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
    }
    return false;
}

std::optional<int> feature_count(const SingularFeature& f) {
    switch (f.kind) {
        case FeatureKind::PairwiseMeetings:
            if (f.pairs.size() == 1 && f.transverse) return 2;
            return std::nullopt;
        case FeatureKind::EdgeThroughVertex:
            if (f.edges.size() != 3 || !f.coplanar) return std::nullopt;
            if (f.straight_elbow) return std::nullopt;
            if (f.along_arm) return f.closed_elbow ? std::nullopt : std::optional<int>(1);
            if (f.closed_elbow) return 3;
            if (!*f.coplanar) return 2;
            if (*f.arms_same_side) return 3;
            return std::nullopt;
        case FeatureKind::VertexVertex:
            if (f.vertices.size() != 2 || f.edges.size() != 4) return std::nullopt;
            if (f.closed_elbow || f.straight_elbow || f.along_arm || !f.opposite_sides) return std::nullopt;
            return *f.opposite_sides ? 2 : 3;
        default:
            return std::nullopt;
    }
}

// Representative partial label assignments, one per blow-up point.
std::optional<std::vector<PartialLabels>> feature_classes(const LinkageType& t, const Placement& p,
                                                          const SingularFeature& f) {
    std::vector<PartialLabels> out;
    auto put = [](PartialLabels& m, const std::string& a, const std::string& b, int v) {
        m[{a, b}] = v;
        m[{b, a}] = v;
    };
    switch (f.kind) {
        case FeatureKind::PairwiseMeetings: {
            for (int s : {1, -1}) {
                PartialLabels m;
                put(m, f.pairs[0].first, f.pairs[0].second, s);
                out.push_back(m);
            }
            return out;
        }
        case FeatureKind::EdgeThroughVertex: {
            const std::string& e = f.edges[0];
            const std::string& v = f.vertices[0];
            const int o1 = arm_orientation(t, f.edges[1], v), o2 = arm_orientation(t, f.edges[2], v);
            auto assign = [&](int n1, int n2) {
                PartialLabels m;
                put(m, e, f.edges[1], n1 * o1);
                put(m, e, f.edges[2], n2 * o2);
                return m;
            };
            if (f.along_arm) return std::vector<PartialLabels>{PartialLabels{}};
            if (!*f.coplanar) {
                const Vec3 u = geom_edge(t, p, e).direction();
                const Vec3 a = arm_dir(t, p, f.edges[1], v), b = arm_dir(t, p, f.edges[2], v);
                const int s = dot(u, cross(a, b)) > 0.0 ? 1 : -1;
                out.push_back(assign(-s, s));
                out.push_back(assign(0, 0));
                return out;
            }
            out.push_back(assign(-1, 1));
            out.push_back(assign(1, -1));
            out.push_back(assign(0, 0));
            return out;
        }
        default:
            return std::nullopt;
    }
}

} // namespace

SingularityReport classify_singularity(const Linkage& l, const Placement& p, double tol) {
    const LinkageType& t = l.type();
    require_complete(t, p);
    if (!is_immersed_configuration(l, p, tol))
        throw Error(ErrorKind::NotAConfiguration, "not a configuration: segment lengths violated");
    if (is_embedding(t, p, tol)) throw Error(ErrorKind::PlacementEmbedded, "placement is embedded");

    const auto tv = t.true_vertices();
    const auto& edges = t.edges();
    std::vector<GeomEdge> geo;
    for (const auto& e : edges) geo.push_back(geom_edge(t, p, e.id));

    // coincident true vertices
    Dsu vd(tv.size());
    for (std::size_t i = 0; i < tv.size(); ++i)
        for (std::size_t j = i + 1; j < tv.size(); ++j)
            if (distance(p.at(tv[i]), p.at(tv[j])) <= tol) vd.unite(static_cast<int>(i), static_cast<int>(j));

    // true vertex strictly inside an edge not incident to it
    std::vector<std::pair<std::string, std::string>> incidences;  // (edge, vertex)
    for (std::size_t ei = 0; ei < edges.size(); ++ei)
        for (const auto& v : tv) {
            if (edges[ei].ends[0] == v || edges[ei].ends[1] == v) continue;
            const Vec3 x = p.at(v);
            const GeomEdge& g = geo[ei];
            double s = dot(x - g.anchor(), g.span()) / dot(g.span(), g.span());
            s = std::clamp(s, g.lower(), g.upper());
            if (distance(g.at(s), x) <= tol && is_interior(g, s)) incidences.push_back({edges[ei].id, v});
        }

    std::vector<Crossing> crossings;
    std::vector<Coincidence> coincidences;
    const auto violations = embedding_violations(t, p, tol);
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto shared = t.common_vertex(edges[i].id, edges[j].id);
            EdgePair pr{edges[i].id, edges[j].id};
            if (pr.first > pr.second) std::swap(pr.first, pr.second);
            if (shared) {
                for (const auto& viol : violations)
                    if (viol.kind == EmbeddingViolation::Kind::FoldedElbow &&
                        std::set<std::string>(viol.edges.begin(), viol.edges.end()) ==
                            std::set<std::string>{pr.first, pr.second})
                        coincidences.push_back({pr, *shared, false});
                continue;
            }
            const ClosestPair cp = closest_points(geo[i], geo[j], tol);
            if (cp.dist() > tol) continue;
            if (cp.parallel) {
                // overlap length along the common carrier
                const Vec3 u = geo[i].direction();
                auto range = [&](const GeomEdge& g) {
                    const double a = dot(g.at(std::max(g.lower(), -1e300)), u);
                    const double b = dot(g.at(std::min(g.upper(), 1e300)), u);
                    return std::pair<double, double>{std::min(a, b), std::max(a, b)};
                };
                const auto r1 = range(geo[i]), r2 = range(geo[j]);
                const double overlap = std::min(r1.second, r2.second) - std::max(r1.first, r2.first);
                if (overlap > tol) coincidences.push_back({pr, std::nullopt, false});
                continue;
            }
            if (cp.a_interior && cp.b_interior) crossings.push_back({pr, (cp.a + cp.b) * 0.5});
        }

    std::vector<SingularFeature> features;

    // crossings sharing a location are multi-points
    Dsu cd(crossings.size());
    for (std::size_t i = 0; i < crossings.size(); ++i)
        for (std::size_t j = i + 1; j < crossings.size(); ++j)
            if (distance(crossings[i].at, crossings[j].at) <= 10.0 * tol) cd.unite(static_cast<int>(i), static_cast<int>(j));
    std::map<int, std::vector<std::size_t>> at_point;
    for (std::size_t i = 0; i < crossings.size(); ++i) at_point[cd.find(static_cast<int>(i))].push_back(i);
    std::vector<std::size_t> doubles;
    for (const auto& [root, members] : at_point) {
        std::set<std::string> es;
        for (auto k : members) {
            es.insert(crossings[k].pair.first);
            es.insert(crossings[k].pair.second);
        }
        if (es.size() >= 3) {
            SingularFeature f;
            f.kind = FeatureKind::MultiPoint;
            f.edges.assign(es.begin(), es.end());
            f.locations.push_back(crossings[members.front()].at);
            f.multiplicity = static_cast<int>(es.size());
            for (auto k : members) f.pairs.push_back(crossings[k].pair);
            features.push_back(f);
        } else {
            doubles.push_back(members.front());
        }
    }
    // double points sharing an edge meet pairwise
    Dsu pd(doubles.size());
    for (std::size_t i = 0; i < doubles.size(); ++i)
        for (std::size_t j = i + 1; j < doubles.size(); ++j) {
            const auto& a = crossings[doubles[i]].pair;
            const auto& b = crossings[doubles[j]].pair;
            if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second)
                pd.unite(static_cast<int>(i), static_cast<int>(j));
        }
    std::map<int, std::vector<std::size_t>> meets;
    for (std::size_t i = 0; i < doubles.size(); ++i) meets[pd.find(static_cast<int>(i))].push_back(doubles[i]);
    for (const auto& [root, members] : meets) {
        SingularFeature f;
        f.kind = FeatureKind::PairwiseMeetings;
        std::set<std::string> es;
        for (auto k : members) {
            f.pairs.push_back(crossings[k].pair);
            f.locations.push_back(crossings[k].at);
            es.insert(crossings[k].pair.first);
            es.insert(crossings[k].pair.second);
        }
        f.edges.assign(es.begin(), es.end());
        f.multiplicity = static_cast<int>(es.size());
        f.transverse = true;
        features.push_back(f);
    }

    // edge through a vertex; a free end lying on an edge it overlaps is part of
    // that overlap, not a feature of its own
    auto from_overlap = [&](const std::string& eid, const std::string& v) {
        const auto inc = t.incident_edges(v);
        if (inc.size() != 1) return false;
        const std::string& g = inc.front();
        for (const auto& c : coincidences)
            if ((c.pair.first == eid && c.pair.second == g) || (c.pair.first == g && c.pair.second == eid)) return true;
        return false;
    };
    for (const auto& [eid, v] : incidences) {
        if (from_overlap(eid, v)) continue;
        SingularFeature f;
        f.kind = FeatureKind::EdgeThroughVertex;
        f.vertices = {v};
        f.locations = {p.at(v)};
        f.multiplicity = 2;
        auto arms = t.incident_edges(v);
        std::sort(arms.begin(), arms.end());
        f.edges.push_back(eid);
        for (const auto& a : arms) f.edges.push_back(a);
        if (arms.size() == 2) fill_edge_elbow(f, p, t, eid, v);
        for (auto& c : coincidences) {
            const bool has_e = c.pair.first == eid || c.pair.second == eid;
            const bool arm_pair = std::find(arms.begin(), arms.end(), c.pair.first) != arms.end() &&
                                  std::find(arms.begin(), arms.end(), c.pair.second) != arms.end();
            const std::string& other = c.pair.first == eid ? c.pair.second : c.pair.first;
            const bool touches_arm = std::find(arms.begin(), arms.end(), other) != arms.end();
            if ((has_e && touches_arm) || (arm_pair && c.vertex == v)) c.absorbed = true;
        }
        features.push_back(f);
    }

    // coincident vertices
    std::map<int, std::vector<std::string>> vgroups;
    for (std::size_t i = 0; i < tv.size(); ++i) vgroups[vd.find(static_cast<int>(i))].push_back(tv[i]);
    for (auto& [root, vs] : vgroups) {
        if (vs.size() < 2) continue;
        std::sort(vs.begin(), vs.end());
        SingularFeature f;
        f.kind = FeatureKind::VertexVertex;
        f.vertices = vs;
        f.locations = {p.at(vs.front())};
        f.multiplicity = static_cast<int>(vs.size());
        bool elbows = vs.size() == 2;
        for (const auto& v : vs) {
            auto arms = t.incident_edges(v);
            std::sort(arms.begin(), arms.end());
            if (arms.size() != 2) elbows = false;
            for (const auto& a : arms) f.edges.push_back(a);
        }
        if (elbows) fill_double_elbow(f, p, t);
        std::set<std::string> es(f.edges.begin(), f.edges.end());
        for (auto& c : coincidences)
            if (es.count(c.pair.first) && es.count(c.pair.second)) c.absorbed = true;
        features.push_back(f);
    }

    for (const auto& c : coincidences) {
        if (c.absorbed) continue;
        SingularFeature f;
        f.kind = FeatureKind::CoincidingEdges;
        f.edges = {c.pair.first, c.pair.second};
        if (c.vertex) {
            f.vertices = {*c.vertex};
            f.closed_elbow = true;
            f.locations = {p.at(*c.vertex)};
        }
        f.pairs = {c.pair};
        features.push_back(f);
    }

    // combinations whose supports overlap, or touching a fully stretched joint on a cycle
    std::vector<SingularFeature> combos;
    for (std::size_t i = 0; i < features.size(); ++i)
        for (std::size_t j = i + 1; j < features.size(); ++j) {
            const auto a = support_of(features[i]), b = support_of(features[j]);
            std::vector<std::string> shared;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
            if (shared.empty()) continue;
            SingularFeature f;
            f.kind = FeatureKind::ConstrainedCombination;
            for (const auto& s : shared) (s[0] == 'e' ? f.edges : f.vertices).push_back(s.substr(2));
            f.locations = features[i].locations;
            f.locations.insert(f.locations.end(), features[j].locations.begin(), features[j].locations.end());
            combos.push_back(f);
        }
    std::set<std::string> touched;
    for (const auto& f : features)
        for (const auto& e : f.edges) touched.insert(e);
    for (const auto& v : tv) {
        const auto inc = t.incident_edges(v);
        if (inc.size() != 2) continue;
        if (!touched.count(inc[0]) && !touched.count(inc[1])) continue;
        if (t.edge(inc[0]).kind != EdgeKind::Segment || t.edge(inc[1]).kind != EdgeKind::Segment) continue;
        const Vec3 a = arm_dir(t, p, inc[0], v), b = arm_dir(t, p, inc[1], v);
        if (norm(cross(a, b)) > kAngleTol || dot(a, b) > 0.0) continue;
        if (!on_segment_cycle(t, v)) continue;
        SingularFeature f;
        f.kind = FeatureKind::ConstrainedCombination;
        f.vertices = {v};
        f.edges = {inc[0], inc[1]};
        f.locations = {p.at(v)};
        combos.push_back(f);
    }
    features.insert(features.end(), combos.begin(), combos.end());

    SingularityReport rep;
    rep.features = features;
    rep.generic = !features.empty() && std::all_of(features.begin(), features.end(), [](const SingularFeature& f) {
        return f.kind == FeatureKind::PairwiseMeetings && f.pairs.size() == 1 && f.transverse;
    });

    int count = 1;
    bool ok = !features.empty();
    for (const auto& f : features) {
        const auto c = feature_count(f);
        if (!c) { ok = false; break; }
        count *= *c;
    }
    rep.catalogued = ok;
    if (ok) {
        rep.preimage_count = count;
        // product of per-feature representatives over the limit's own labels
        std::vector<PartialLabels> acc{label_vector(t, p, tol)};
        bool have = true;
        for (const auto& f : features) {
            const auto cls = feature_classes(t, p, f);
            if (!cls) { have = false; break; }
            std::vector<PartialLabels> next;
            for (const auto& base : acc)
                for (const auto& part : *cls) {
                    PartialLabels m = base;
                    for (const auto& [k, v] : part) m[k] = v;
                    next.push_back(m);
                }
            acc = std::move(next);
        }
        if (have) rep.label_classes = acc;
    }
    return rep;
}

int blowup_fiber_count(const SingularityReport& report) {
    if (!report.catalogued || !report.preimage_count)
        throw Error(ErrorKind::UncataloguedSingularity, "uncatalogued singularity");
    return *report.preimage_count;
}

namespace {

bool on_arc(const Vec3& x, const Vec3& a, const Vec3& b) {
    const Vec3 n = cross(a, b);
    return dot(cross(a, x), n) >= 0.0 && dot(cross(x, b), n) >= 0.0 && dot(x, a + b) > 0.0;
}

bool arcs_cross(const Vec3& a1, const Vec3& a2, const Vec3& b1, const Vec3& b2) {
    const Vec3 n1 = cross(a1, a2), n2 = cross(b1, b2);
    const Vec3 d = cross(n1, n2);
    if (norm(d) == 0.0) return false;
    const Vec3 x = normalized(d);
    for (const Vec3& y : {x, -x})
        if (on_arc(y, a1, a2) && on_arc(y, b1, b2)) return true;
    return false;
}

} // namespace

bool double_elbow_inside(const Vec3& c, const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    const Vec3 m = normalized(p2 + q2);
    const Vec3 dir = normalized(c);
    const Vec3 loop[4] = {p2, -p1, q2, -q1};
    // start from whichever of m, -m is not antipodal to the query
    const Vec3 ref = dot(dir, m) >= 0.0 ? m : -m;
    int crossings = 0;
    if (norm(cross(ref, dir)) > 0.0)
        for (int k = 0; k < 4; ++k)
            if (arcs_cross(ref, dir, loop[k], loop[(k + 1) % 4])) ++crossings;
    const bool same_as_ref = crossings % 2 == 0;
    return (ref == m) == same_as_ref;
}

std::set<std::string> class_keys(const Linkage& l, const SingularityReport& report, const VirtualConfiguration& vc,
                                 double tol) {
    const LinkageType& t = l.type();
    if (!report.catalogued) throw Error(ErrorKind::UncataloguedSingularity, "uncatalogued singularity");
    if (vc.labels.empty()) throw Error(ErrorKind::InvalidArgument, "virtual configuration without labels");
    const Placement& x = vc.limit;

    // witness-derived keys, shared by every label vector
    std::map<std::size_t, std::string> geometric;
    for (std::size_t i = 0; i < report.features.size(); ++i) {
        const auto& f = report.features[i];
        if (f.kind != FeatureKind::VertexVertex) continue;
        if (!vc.witness || vc.witness->waypoints.size() < 2)
            throw Error(ErrorKind::UncataloguedSingularity,
                        "uncatalogued singularity: double elbow classes need an approach path");
        const auto& w = vc.witness->waypoints;
        // last embedded point of the approach, close to the limit
        const Placement s = lerp(w[w.size() - 2], w.back(), 1.0 - 1.0 / 64.0);
        const Vec3 c = s.at(f.vertices[0]) - s.at(f.vertices[1]);
        if (!(norm(c) > 0.0))
            throw Error(ErrorKind::InvalidApproachPath, "invalid approach path: elbow vertices coincide before the limit");
        const Vec3 p1 = arm_dir(t, s, f.edges[0], f.vertices[0]);
        const Vec3 q1 = arm_dir(t, s, f.edges[1], f.vertices[0]);
        const Vec3 p2 = arm_dir(t, s, f.edges[2], f.vertices[1]);
        const Vec3 q2 = arm_dir(t, s, f.edges[3], f.vertices[1]);
        geometric[i] = double_elbow_inside(c, p1, q1, p2, q2) ? "inside" : "outside";
    }

    std::set<std::string> keys;
    for (const auto& lv : vc.labels) {
        std::string key;
        for (std::size_t i = 0; i < report.features.size(); ++i) {
            const auto& f = report.features[i];
            std::string part;
            switch (f.kind) {
                case FeatureKind::PairwiseMeetings:
                    part = "dp" + std::to_string(lv.at(f.pairs[0]));
                    break;
                case FeatureKind::EdgeThroughVertex: {
                    if (f.along_arm) {
                        part = "single";
                        break;
                    }
                    const std::string& e = f.edges[0];
                    const std::string& v = f.vertices[0];
                    const int n1 = lv.at({e, f.edges[1]}) * arm_orientation(t, f.edges[1], v);
                    const int n2 = lv.at({e, f.edges[2]}) * arm_orientation(t, f.edges[2], v);
                    if (*f.coplanar) {
                        part = (n1 == -1 && n2 == 1) ? "T+" : (n1 == 1 && n2 == -1) ? "T-" : "U";
                    } else {
                        const Vec3 u = geom_edge(t, x, e).direction();
                        const Vec3 a = arm_dir(t, x, f.edges[1], v), b = arm_dir(t, x, f.edges[2], v);
                        const int s = dot(u, cross(a, b)) > 0.0 ? 1 : -1;
                        const bool threaded = (n1 == -s && n2 == s) || (n1 == -s && n2 == 0) || (n1 == 0 && n2 == s);
                        part = threaded ? "threaded" : "unthreaded";
                    }
                    break;
                }
                case FeatureKind::VertexVertex:
                    part = geometric.at(i);
                    break;
                default:
                    throw Error(ErrorKind::UncataloguedSingularity, "uncatalogued singularity");
            }
            key += (i ? "|" : "") + part;
        }
        keys.insert(key);
    }
    (void)tol;
    return keys;
}

} // namespace linkspace
