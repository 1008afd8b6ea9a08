#include "linkspace/virtual_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "linkspace/error.hpp"
#include "linkspace/singularity.hpp"

namespace linkspace {

double path_length(const PLPath& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.waypoints.size(); ++i)
        total += placement_distance(path.waypoints[i - 1], path.waypoints[i]);
    return total;
}

PLPath reversed(const PLPath& path) {
    PLPath out = path;
    std::reverse(out.waypoints.begin(), out.waypoints.end());
    return out;
}

namespace {

bool valid_sample(const Linkage& l, const Placement& x, double tol) {
    return is_immersed_configuration(l, x, tol) && is_embedding(l.type(), x, tol);
}

double pair_distance(const LinkageType& t, const Placement& x, const EdgePair& pr, double tol) {
    return closest_points(geom_edge(t, x, pr.first), geom_edge(t, x, pr.second), tol).dist();
}

// Bound on how fast points of the edge move when its ends move linearly from a
// to b; infinite for an unbounded edge whose direction changes.
double edge_speed(const LinkageType& t, const Placement& a, const Placement& b, const std::string& id) {
    const EdgeSpec& e = t.edge(id);
    const Vec3 d0 = b.at(e.ends[0]) - a.at(e.ends[0]);
    const Vec3 d1 = b.at(e.ends[1]) - a.at(e.ends[1]);
    if (e.kind == EdgeKind::Segment) return std::max(norm(d0), norm(d1));
    if (d0 == d1) return norm(d0);
    return std::numeric_limits<double>::infinity();
}

constexpr int kMaxGapDepth = 48;

// The distance between two moving edges is Lipschitz in the hop parameter, so
// the gap between samples a and b is contact-free once (da + db - L) / 2 > tol.
bool gap_clear(const LinkageType& t, const EdgePair& pr, const Placement& a, const Placement& b, double da,
               double db, int depth, double tol) {
    const double lip = edge_speed(t, a, b, pr.first) + edge_speed(t, a, b, pr.second);
    if (!std::isfinite(lip)) return true;
    if ((da + db - lip) / 2.0 > tol) return true;
    if (depth >= kMaxGapDepth) return false;
    const Placement m = lerp(a, b, 0.5);
    const double dm = pair_distance(t, m, pr, tol);
    if (dm <= tol) return false;
    return gap_clear(t, pr, a, m, da, dm, depth + 1, tol) && gap_clear(t, pr, m, b, dm, db, depth + 1, tol);
}

// Samples must be embeddings, and immersed configurations too when
// check_lengths is set; gaps between samples are certified contact-free.
bool valid_hop(const Linkage& l, const Placement& a, const Placement& b, int samples, bool skip_first,
               bool skip_last, double tol, bool check_lengths = true) {
    const LinkageType& t = l.type();
    std::vector<Placement> xs;
    xs.reserve(samples);
    for (int j = 0; j < samples; ++j) {
        const double s = static_cast<double>(j) / (samples - 1);
        xs.push_back(lerp(a, b, s));
        if (j == 0 && skip_first) continue;
        if (j == samples - 1 && skip_last) continue;
        const bool ok = check_lengths ? valid_sample(l, xs.back(), tol) : is_embedding(t, xs.back(), tol);
        if (!ok) return false;
    }
    for (const auto& pr : edge_pairs(t)) {
        if (pr.second < pr.first) continue;
        double prev = pair_distance(t, xs[0], pr, tol);
        for (int j = 1; j < samples; ++j) {
            const double cur = pair_distance(t, xs[j], pr, tol);
            // an exempt endpoint may already be in contact; that gap keeps sample semantics
            const bool exempt = (j == 1 && skip_first && prev <= tol) || (j == samples - 1 && skip_last && cur <= tol);
            if (!exempt && !gap_clear(t, pr, xs[j - 1], xs[j], prev, cur, 0, tol)) return false;
            prev = cur;
        }
    }
    return true;
}

} // namespace

bool is_valid_path(const Linkage& l, const PLPath& path, int samples_per_hop, bool allow_immersed_endpoint,
                   double tol) {
    if (samples_per_hop < 2) throw Error(ErrorKind::InvalidArgument, "samples_per_hop must be at least 2");
    const auto& w = path.waypoints;
    if (w.empty()) return false;
    for (const auto& x : w) require_complete(l.type(), x);
    auto endpoint_ok = [&](const Placement& x) {
        if (valid_sample(l, x, tol)) return true;
        return allow_immersed_endpoint && is_immersed_configuration(l, x, tol);
    };
    if (w.size() == 1) return endpoint_ok(w[0]);
    if (!endpoint_ok(w.front()) || !endpoint_ok(w.back())) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        const bool first_hop = i == 1, last_hop = i + 1 == w.size();
        if (!valid_hop(l, w[i - 1], w[i], samples_per_hop, first_hop, last_hop, tol)) return false;
    }
    return true;
}

namespace {

// Moves that keep every segment vector fixed: one translation per group of
// vertices joined by segments, synthetic vertices moving on their own.
struct MoveSpace {
    std::vector<std::string> vertex_ids;
    std::vector<int> group_of;        // per vertex
    std::vector<double> group_size;   // vertex count per group
    int groups = 0;

    explicit MoveSpace(const LinkageType& t) {
        vertex_ids = t.vertices();
        const std::size_t n = vertex_ids.size();
        std::vector<int> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
        for (const auto& e : t.edges()) {
            if (e.kind != EdgeKind::Segment) continue;
            parent[find(static_cast<int>(t.vertex_index(e.ends[0])))] = find(static_cast<int>(t.vertex_index(e.ends[1])));
        }
        std::map<int, int> label;
        group_of.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const int r = find(static_cast<int>(i));
            auto it = label.find(r);
            if (it == label.end()) it = label.emplace(r, groups++).first;
            group_of[i] = it->second;
        }
        group_size.assign(groups, 0.0);
        for (int g : group_of) group_size[g] += 1.0;
    }

    std::size_t dim() const { return static_cast<std::size_t>(groups) * 3; }

    Placement apply(const Placement& base, const std::vector<double>& m) const {
        Placement out = base;
        for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
            const int g = group_of[i];
            out[vertex_ids[i]] += Vec3{m[3 * g], m[3 * g + 1], m[3 * g + 2]};
        }
        return out;
    }

    // distance in (R^3)^V induced by a difference of move vectors
    double metric(const std::vector<double>& a, const std::vector<double>& b) const {
        double sum = 0.0;
        for (int g = 0; g < groups; ++g)
            for (int k = 0; k < 3; ++k) {
                const double d = a[3 * g + k] - b[3 * g + k];
                sum += group_size[g] * d * d;
            }
        return std::sqrt(sum);
    }

    std::optional<std::vector<double>> express(const Placement& from, const Placement& to) const {
        std::vector<double> m(dim(), 0.0);
        std::vector<bool> set(groups, false);
        for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
            const int g = group_of[i];
            const Vec3 d = to.at(vertex_ids[i]) - from.at(vertex_ids[i]);
            if (!set[g]) {
                m[3 * g] = d.x;
                m[3 * g + 1] = d.y;
                m[3 * g + 2] = d.z;
                set[g] = true;
            } else if (norm(d - Vec3{m[3 * g], m[3 * g + 1], m[3 * g + 2]}) > 1e-12 * (1.0 + norm(d))) {
                return std::nullopt;
            }
        }
        return m;
    }
};

} // namespace

PathMetricResult path_metric(const Linkage& l, const Placement& from, const Placement& to, long budget,
                             std::uint64_t seed, const PlannerOptions& opt) {
    require_complete(l.type(), from);
    require_complete(l.type(), to);
    if (!valid_sample(l, from, opt.tol) || !valid_sample(l, to, opt.tol))
        throw Error(ErrorKind::EndpointsNotEmbedded, "endpoints must be embedded configurations");

    PathMetricResult res;
    const double d0 = placement_distance(from, to);
    res.lower_bound = std::min(d0, 1.0);
    if (d0 == 0.0) {
        res.upper_bound = 0.0;
        res.capped = false;
        res.straight = true;
        res.best_path = PLPath{{from, to}};
        return res;
    }
    if (valid_hop(l, from, to, opt.samples_per_hop, false, false, opt.tol)) {
        res.straight = true;
        res.best_path = PLPath{{from, to}};
        res.upper_bound = std::min(d0, 1.0);
        res.capped = d0 >= 1.0;
        return res;
    }
    if (d0 >= 1.0) return res;

    const MoveSpace ms(l.type());
    const auto goal = ms.express(from, to);
    if (!goal) return res;

    struct Node {
        std::vector<double> m;
        int parent;
        double cost;
    };
    std::vector<Node> tree{{std::vector<double>(ms.dim(), 0.0), -1, 0.0}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double eta = std::max(0.05, 0.25 * d0);
    // sample region: per-group boxes around the segment from start to goal
    double span = 0.0;
    for (double v : *goal) span = std::max(span, std::abs(v));
    const double radius = std::max(0.5, 2.0 * span);

    double best = std::numeric_limits<double>::infinity();
    int best_node = -1;

    auto record_path = [&](int node) {
        PLPath p;
        std::vector<Placement> rev{to};
        for (int k = node; k >= 0; k = tree[k].parent) rev.push_back(ms.apply(from, tree[k].m));
        p.waypoints.assign(rev.rbegin(), rev.rend());
        return p;
    };

    for (long it = 0; it < budget; ++it) {
        res.expansions = it + 1;
        std::vector<double> target(ms.dim());
        if (unit(rng) < opt.goal_bias) {
            target = *goal;
        } else {
            for (std::size_t k = 0; k < target.size(); ++k)
                target[k] = 0.5 * (*goal)[k] + radius * (2.0 * unit(rng) - 1.0);
        }
        int near = 0;
        double near_d = ms.metric(tree[0].m, target);
        for (std::size_t k = 1; k < tree.size(); ++k) {
            const double d = ms.metric(tree[k].m, target);
            if (d < near_d) { near_d = d; near = static_cast<int>(k); }
        }
        if (near_d == 0.0) continue;
        std::vector<double> step = target;
        if (near_d > eta) {
            const double f = eta / near_d;
            for (std::size_t k = 0; k < step.size(); ++k)
                step[k] = tree[near].m[k] + f * (target[k] - tree[near].m[k]);
        }
        const Placement a = ms.apply(from, tree[near].m);
        const Placement b = ms.apply(from, step);
        if (!valid_hop(l, a, b, opt.samples_per_hop, true, false, opt.tol)) continue;
        const double cost = tree[near].cost + ms.metric(tree[near].m, step);
        if (cost >= best) continue;
        tree.push_back({step, near, cost});
        const int id = static_cast<int>(tree.size()) - 1;
        const double to_goal = ms.metric(step, *goal);
        if (cost + to_goal < best && valid_hop(l, b, to, opt.samples_per_hop, true, true, opt.tol)) {
            best = cost + to_goal;
            best_node = id;
        }
    }
    if (best_node >= 0 && best < 1.0) {
        PLPath p = record_path(best_node);
        res.upper_bound = std::max(path_length(p), d0);
        res.capped = false;
        res.best_path = std::move(p);
    }
    return res;
}

double path_metric_upper_bound(const Linkage& l, const Placement& from, const Placement& to, long budget,
                               std::uint64_t seed, const PlannerOptions& opt) {
    return path_metric(l, from, to, budget, seed, opt).upper_bound;
}

LabelVector VirtualConfiguration::completed_labels() const {
    LabelVector out;
    if (labels.empty()) return out;
    out = *labels.begin();
    for (const auto& lv : labels)
        for (auto& [pair, v] : out)
            if (lv.at(pair) != v) v = 0;
    return out;
}

VirtualConfiguration virtual_config_from_path(const Linkage& l, const PLPath& path, int tail_samples,
                                              int samples_per_hop, double tol) {
    if (samples_per_hop < 2) throw Error(ErrorKind::InvalidArgument, "samples_per_hop must be at least 2");
    if (tail_samples < 1) throw Error(ErrorKind::InvalidArgument, "tail_samples must be positive");
    const auto& w = path.waypoints;
    if (w.size() < 2) throw Error(ErrorKind::InvalidApproachPath, "invalid approach path: needs two waypoints");
    for (const auto& x : w) require_complete(l.type(), x);
    const Placement& limit = w.back();
    if (!is_immersed_configuration(l, limit, tol))
        throw Error(ErrorKind::NotAConfiguration, "not a configuration: approach target violates lengths");
    if (is_embedding(l.type(), limit, tol))
        throw Error(ErrorKind::InvalidApproachPath, "invalid approach path: target is embedded");

    std::vector<Placement> samples;
    for (std::size_t i = 1; i < w.size(); ++i)
        for (int j = 0; j < samples_per_hop - 1; ++j) {
            if (i > 1 && j == 0) continue;
            samples.push_back(lerp(w[i - 1], w[i], static_cast<double>(j) / (samples_per_hop - 1)));
        }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!valid_hop(l, w[i - 1], w[i], samples_per_hop, false, i + 1 == w.size(), tol, false))
            throw Error(ErrorKind::InvalidApproachPath, "invalid approach path: the path meets a contact before the target");
    VirtualConfiguration vc;
    vc.limit = limit;
    vc.witness = path;
    for (std::size_t k = 0; k < samples.size(); ++k)
        if (k + static_cast<std::size_t>(tail_samples) >= samples.size())
            vc.labels.insert(label_vector(l.type(), samples[k], tol));
    return vc;
}

bool labels_identified(const Linkage& l, const VirtualConfiguration& v1, const VirtualConfiguration& v2,
                       double tol) {
    require_complete(l.type(), v1.limit);
    require_complete(l.type(), v2.limit);
    if (placement_distance(v1.limit, v2.limit) > tol)
        throw Error(ErrorKind::InvalidArgument, "virtual configurations have different limits");
    const SingularityReport rep = classify_singularity(l, v1.limit, tol);
    if (!rep.catalogued) throw Error(ErrorKind::UncataloguedSingularity, "uncatalogued singularity");
    const auto k1 = class_keys(l, rep, v1, tol);
    const auto k2 = class_keys(l, rep, v2, tol);
    for (const auto& k : k1)
        if (k2.count(k)) return true;
    return false;
}

} // namespace linkspace
