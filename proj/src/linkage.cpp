#include "linkspace/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "linkspace/error.hpp"

namespace linkspace {

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorKind::MalformedInput, msg); }

} // namespace

LinkageType::LinkageType(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                         std::optional<std::string> base_edge)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (edges_.empty()) malformed("linkage has no edges");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].empty()) malformed("empty vertex id");
        if (!vidx_.emplace(vertices_[i], i).second) malformed("duplicate vertex id '" + vertices_[i] + "'");
    }
    synthetic_.assign(vertices_.size(), false);
    std::vector<int> uses(vertices_.size(), 0), synthetic_uses(vertices_.size(), 0);
    std::set<std::pair<std::string, std::string>> joined;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const EdgeSpec& e = edges_[i];
        if (e.id.empty()) malformed("empty edge id");
        if (!eidx_.emplace(e.id, i).second) malformed("duplicate edge id '" + e.id + "'");
        for (const auto& v : e.ends)
            if (!vidx_.count(v)) malformed("edge '" + e.id + "' uses unknown vertex '" + v + "'");
        if (e.ends[0] == e.ends[1]) malformed("edge '" + e.id + "' joins a vertex to itself");
        auto key = std::minmax(e.ends[0], e.ends[1]);
        if (!joined.insert({key.first, key.second}).second)
            malformed("edge '" + e.id + "' duplicates another edge");
        for (int k = 0; k < 2; ++k) {
            const std::size_t vi = vidx_.at(e.ends[k]);
            ++uses[vi];
            const bool synth = (e.kind == EdgeKind::Line) || (e.kind == EdgeKind::HalfLine && k == 1);
            if (synth) {
                synthetic_[vi] = true;
                ++synthetic_uses[vi];
            }
        }
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (uses[i] == 0) malformed("isolated vertex '" + vertices_[i] + "'");
        if (synthetic_[i] && uses[i] != 1)
            malformed("synthetic vertex '" + vertices_[i] + "' must belong to exactly one generalized edge");
    }
    if (base_edge) {
        if (!eidx_.count(*base_edge)) malformed("unknown base edge '" + *base_edge + "'");
        base_edge_ = *base_edge;
        base_explicit_ = true;
    } else {
        base_edge_ = edges_.front().id;
    }
}

const EdgeSpec& LinkageType::edge(const std::string& id) const {
    auto it = eidx_.find(id);
    if (it == eidx_.end()) throw Error(ErrorKind::InvalidArgument, "unknown edge '" + id + "'");
    return edges_[it->second];
}

std::size_t LinkageType::edge_index(const std::string& id) const {
    auto it = eidx_.find(id);
    if (it == eidx_.end()) throw Error(ErrorKind::InvalidArgument, "unknown edge '" + id + "'");
    return it->second;
}

std::size_t LinkageType::vertex_index(const std::string& id) const {
    auto it = vidx_.find(id);
    if (it == vidx_.end()) throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + id + "'");
    return it->second;
}

bool LinkageType::has_vertex(const std::string& id) const { return vidx_.count(id) > 0; }
bool LinkageType::has_edge(const std::string& id) const { return eidx_.count(id) > 0; }

bool LinkageType::is_synthetic(const std::string& vertex) const { return synthetic_[vertex_index(vertex)]; }

std::vector<std::string> LinkageType::true_vertices() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!synthetic_[i]) out.push_back(vertices_[i]);
    return out;
}

std::vector<std::string> LinkageType::incident_edges(const std::string& vertex) const {
    std::vector<std::string> out;
    for (const auto& e : edges_)
        if (e.ends[0] == vertex || e.ends[1] == vertex) out.push_back(e.id);
    return out;
}

std::optional<std::string> LinkageType::common_vertex(const std::string& e1, const std::string& e2) const {
    const auto& a = edge(e1);
    const auto& b = edge(e2);
    for (const auto& u : a.ends)
        for (const auto& v : b.ends)
            if (u == v) return u;
    return std::nullopt;
}

std::vector<CycleViolation> cycle_violations(const LinkageType& t, const std::map<std::string, double>& lengths) {
    // adjacency over segments only
    const std::size_t n = t.vertices().size();
    std::vector<std::vector<std::pair<std::size_t, std::string>>> adj(n);
    for (const auto& e : t.edges()) {
        if (e.kind != EdgeKind::Segment) continue;
        const std::size_t a = t.vertex_index(e.ends[0]), b = t.vertex_index(e.ends[1]);
        adj[a].push_back({b, e.id});
        adj[b].push_back({a, e.id});
    }
    std::vector<CycleViolation> out;
    std::vector<bool> on_path(n, false);
    std::vector<std::size_t> vpath;
    std::vector<std::string> epath;

    auto check = [&](const std::vector<std::string>& cyc) {
        double total = 0.0, longest = -1.0;
        std::string arg;
        for (const auto& id : cyc) {
            const double len = lengths.at(id);
            total += len;
            if (len > longest) { longest = len; arg = id; }
        }
        if (!(2.0 * longest < total)) out.push_back({cyc, arg});
    };

    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
        for (const auto& [w, id] : adj[v]) {
            if (w == start && vpath.size() >= 3) {
                // each cycle is found twice; keep the orientation with the smaller second vertex
                if (vpath[1] < vpath.back()) {
                    auto cyc = epath;
                    cyc.push_back(id);
                    check(cyc);
                }
                continue;
            }
            if (w <= start || on_path[w]) continue;
            on_path[w] = true;
            vpath.push_back(w);
            epath.push_back(id);
            dfs(start, w);
            epath.pop_back();
            vpath.pop_back();
            on_path[w] = false;
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        on_path[s] = true;
        vpath = {s};
        epath.clear();
        dfs(s, s);
        on_path[s] = false;
    }
    return out;
}

Linkage::Linkage(LinkageType type, std::map<std::string, double> lengths)
    : type_(std::move(type)), lengths_(std::move(lengths)) {
    for (const auto& e : type_.edges()) {
        if (e.kind != EdgeKind::Segment) {
            lengths_.erase(e.id);
            continue;
        }
        auto it = lengths_.find(e.id);
        if (it == lengths_.end()) malformed("segment '" + e.id + "' has no length");
        if (!(it->second > 0.0) || !std::isfinite(it->second))
            malformed("segment '" + e.id + "' needs a positive finite length");
    }
    for (const auto& [id, len] : lengths_)
        if (!type_.has_edge(id)) malformed("length given for unknown edge '" + id + "'");
    const auto bad = cycle_violations(type_, lengths_);
    if (!bad.empty()) {
        std::ostringstream os;
        os << "cycle polygon inequality fails:";
        for (const auto& c : bad) {
            os << " [";
            for (std::size_t i = 0; i < c.edges.size(); ++i) os << (i ? "," : "") << c.edges[i];
            os << "]";
        }
        throw Error(ErrorKind::InfeasibleLengths, os.str());
    }
}

void require_complete(const LinkageType& t, const Placement& p) {
    for (const auto& v : t.vertices()) {
        auto it = p.find(v);
        if (it == p.end()) throw Error(ErrorKind::IncompletePlacement, "incomplete placement: vertex '" + v + "' missing");
        const Vec3& x = it->second;
        if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(x.z))
            throw Error(ErrorKind::MalformedInput, "non-finite coordinate for vertex '" + v + "'");
    }
}

GeomEdge geom_edge(const LinkageType& t, const Placement& p, const std::string& edge_id) {
    const EdgeSpec& e = t.edge(edge_id);
    return GeomEdge::from_points(e.kind, p.at(e.ends[0]), p.at(e.ends[1]));
}

std::vector<EdgePair> edge_pairs(const LinkageType& t) {
    std::vector<EdgePair> out;
    for (const auto& a : t.edges())
        for (const auto& b : t.edges())
            if (a.id != b.id && !t.common_vertex(a.id, b.id)) out.push_back({a.id, b.id});
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::string, double> moduli(const LinkageType& t, const Placement& p) {
    require_complete(t, p);
    std::map<std::string, double> out;
    for (const auto& e : t.edges())
        if (e.kind == EdgeKind::Segment) out[e.id] = distance(p.at(e.ends[0]), p.at(e.ends[1]));
    return out;
}

std::map<std::string, double> length_residuals(const Linkage& l, const Placement& p) {
    auto m = moduli(l.type(), p);
    for (auto& [id, v] : m) v = std::abs(v - l.length(id));
    return m;
}

bool is_immersed_configuration(const Linkage& l, const Placement& p, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    for (const auto& [id, r] : length_residuals(l, p))
        if (!(r <= tol)) return false;
    return true;
}

const char* violation_kind_name(EmbeddingViolation::Kind k) {
    switch (k) {
        case EmbeddingViolation::Kind::DegenerateEdge: return "degenerate-edge";
        case EmbeddingViolation::Kind::CoincidentVertices: return "coincident-vertices";
        case EmbeddingViolation::Kind::EdgeContact: return "edge-contact";
        case EmbeddingViolation::Kind::FoldedElbow: return "folded-elbow";
    }
    return "contact";
}

std::vector<EmbeddingViolation> embedding_violations(const LinkageType& t, const Placement& p, double tol) {
    require_complete(t, p);
    using K = EmbeddingViolation::Kind;
    std::vector<EmbeddingViolation> out;
    const auto& edges = t.edges();
    std::vector<bool> degenerate(edges.size(), false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double d = distance(p.at(edges[i].ends[0]), p.at(edges[i].ends[1]));
        if (!(d > tol)) {
            degenerate[i] = true;
            out.push_back({K::DegenerateEdge, {edges[i].id}, {}, d});
        }
    }
    const auto tv = t.true_vertices();
    for (std::size_t i = 0; i < tv.size(); ++i)
        for (std::size_t j = i + 1; j < tv.size(); ++j) {
            const double d = distance(p.at(tv[i]), p.at(tv[j]));
            if (!(d > tol)) out.push_back({K::CoincidentVertices, {}, {tv[i], tv[j]}, d});
        }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (degenerate[i]) continue;
        const GeomEdge gi = geom_edge(t, p, edges[i].id);
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (degenerate[j]) continue;
            const GeomEdge gj = geom_edge(t, p, edges[j].id);
            const auto shared = t.common_vertex(edges[i].id, edges[j].id);
            if (!shared) {
                const double d = closest_points(gi, gj, tol).dist();
                if (!(d > tol)) out.push_back({K::EdgeContact, {edges[i].id, edges[j].id}, {}, d});
                continue;
            }
            // two edges leaving a common vertex meet again only when folded onto each other
            const Vec3 v = p.at(*shared);
            auto away = [&](const EdgeSpec& e) {
                const std::string& other = e.ends[0] == *shared ? e.ends[1] : e.ends[0];
                return p.at(other) - v;
            };
            const Vec3 ui = away(edges[i]), uj = away(edges[j]);
            const double li = edges[i].kind == EdgeKind::Segment ? norm(ui) : std::numeric_limits<double>::infinity();
            const double lj = edges[j].kind == EdgeKind::Segment ? norm(uj) : std::numeric_limits<double>::infinity();
            const double c = dot(ui, uj) / (norm(ui) * norm(uj));
            const double sn = norm(cross(ui, uj)) / (norm(ui) * norm(uj));
            const double reach = std::min(li, lj);
            if (c > 0.0 && (sn <= 1e-15 || reach * sn <= tol))
                out.push_back({K::FoldedElbow, {edges[i].id, edges[j].id}, {*shared}, reach * sn});
        }
    }
    return out;
}

bool is_embedding(const LinkageType& t, const Placement& p, double tol) {
    return embedding_violations(t, p, tol).empty();
}

LabelVector label_vector(const LinkageType& t, const Placement& p, double tol) {
    require_complete(t, p);
    LabelVector out;
    for (const auto& pr : edge_pairs(t)) {
        if (pr.first > pr.second) {
            out[pr] = out.at({pr.second, pr.first});
            continue;
        }
        int v = 0;
        try {
            v = linking_number(geom_edge(t, p, pr.first), geom_edge(t, p, pr.second), tol);
        } catch (const Error&) {
            v = 0;  // degenerate edge: touching branch
        }
        out[pr] = v;
    }
    return out;
}

Placement normalize(const LinkageType& t, const Placement& p, NormalizeMode mode) {
    require_complete(t, p);
    const EdgeSpec& base = t.edge(t.base_edge());
    const Vec3 origin = p.at(base.ends[0]);
    const Vec3 dir = p.at(base.ends[1]) - origin;
    if (!(norm(dir) > 0.0)) throw Error(ErrorKind::DegenerateGeometry, "base edge is degenerate");

    Placement out;
    for (const auto& [id, x] : p) out[id] = x - origin;
    if (mode == NormalizeMode::Pointed) return out;

    const Vec3 d = dir / norm(dir);
    const Vec3 e1{1.0, 0.0, 0.0};
    const Vec3 axis_raw = cross(d, e1);
    const double s = norm(axis_raw), c = dot(d, e1);
    if (s == 0.0 && c > 0.0) return out;

    Vec3 k;
    double angle;
    if (s == 0.0) {
        k = {0.0, 1.0, 0.0};
        angle = std::numbers::pi;
    } else {
        k = axis_raw / s;
        angle = std::atan2(s, c);
    }
    const double ca = std::cos(angle), sa = std::sin(angle);
    for (auto& [id, x] : out) {
        // Rodrigues
        x = x * ca + cross(k, x) * sa + k * (dot(k, x) * (1.0 - ca));
    }
    out[base.ends[0]] = Vec3{};
    out[base.ends[1]] = Vec3{norm(dir), 0.0, 0.0};
    return out;
}

double placement_distance(const Placement& a, const Placement& b) {
    double sum = 0.0;
    for (const auto& [id, x] : a) {
        const Vec3 d = x - b.at(id);
        sum += dot(d, d);
    }
    return std::sqrt(sum);
}

Placement lerp(const Placement& a, const Placement& b, double s) {
    Placement out;
    for (const auto& [id, x] : a) out[id] = x + (b.at(id) - x) * s;
    return out;
}

} // namespace linkspace
