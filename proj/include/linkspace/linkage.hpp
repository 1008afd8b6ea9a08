#pragma once
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkspace/geom.hpp"

namespace linkspace {

struct EdgeSpec {
    std::string id;
    EdgeKind kind = EdgeKind::Segment;
    // Half-lines: ends[0] is the real endpoint, ends[1] the synthetic direction vertex.
    // Lines: both ends synthetic. The edge is oriented from ends[0] to ends[1].
    std::array<std::string, 2> ends;
};

using EdgePair = std::pair<std::string, std::string>;
using Placement = std::map<std::string, Point3>;
using LabelVector = std::map<EdgePair, int>;

class LinkageType {
public:
    LinkageType() = default;
    // Validates: unique ids, no isolated vertex, distinct ends, synthetic vertices
    // used by exactly one generalized edge. Base edge defaults to the first edge.
    LinkageType(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                std::optional<std::string> base_edge = std::nullopt);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<EdgeSpec>& edges() const { return edges_; }
    const EdgeSpec& edge(const std::string& id) const;
    std::size_t edge_index(const std::string& id) const;
    std::size_t vertex_index(const std::string& id) const;
    bool has_vertex(const std::string& id) const;
    bool has_edge(const std::string& id) const;

    bool is_synthetic(const std::string& vertex) const;
    std::vector<std::string> true_vertices() const;
    // Edges having this vertex as an end, in declaration order.
    std::vector<std::string> incident_edges(const std::string& vertex) const;
    std::optional<std::string> common_vertex(const std::string& e1, const std::string& e2) const;

    const std::string& base_edge() const { return base_edge_; }
    const std::string& base_vertex() const { return edge(base_edge_).ends[0]; }
    bool base_edge_explicit() const { return base_explicit_; }

private:
    std::vector<std::string> vertices_;
    std::vector<EdgeSpec> edges_;
    std::map<std::string, std::size_t> vidx_;
    std::map<std::string, std::size_t> eidx_;
    std::vector<bool> synthetic_;
    std::string base_edge_;
    bool base_explicit_ = false;
};

struct CycleViolation {
    std::vector<std::string> edges;  // the simple cycle, in traversal order
    std::string longest;
};

// Simple cycles of segments whose strict polygon inequality fails.
std::vector<CycleViolation> cycle_violations(const LinkageType& t, const std::map<std::string, double>& lengths);

class Linkage {
public:
    Linkage() = default;
    // Throws MalformedInput for missing/nonpositive segment lengths and
    // InfeasibleLengths when a cycle violates the polygon inequality.
    Linkage(LinkageType type, std::map<std::string, double> lengths);

    const LinkageType& type() const { return type_; }
    const std::map<std::string, double>& lengths() const { return lengths_; }
    double length(const std::string& edge_id) const { return lengths_.at(edge_id); }

private:
    LinkageType type_;
    std::map<std::string, double> lengths_;
};

void require_complete(const LinkageType& t, const Placement& p);

GeomEdge geom_edge(const LinkageType& t, const Placement& p, const std::string& edge_id);

std::vector<EdgePair> edge_pairs(const LinkageType& t);

std::map<std::string, double> moduli(const LinkageType& t, const Placement& p);

// |measured length - prescribed length| per segment.
std::map<std::string, double> length_residuals(const Linkage& l, const Placement& p);

bool is_immersed_configuration(const Linkage& l, const Placement& p, double tol = kDefaultTol);

struct EmbeddingViolation {
    enum class Kind { DegenerateEdge, CoincidentVertices, EdgeContact, FoldedElbow };
    Kind kind;
    std::vector<std::string> edges;
    std::vector<std::string> vertices;
    double distance = 0.0;
};

const char* violation_kind_name(EmbeddingViolation::Kind k);

std::vector<EmbeddingViolation> embedding_violations(const LinkageType& t, const Placement& p,
                                                     double tol = kDefaultTol);

bool is_embedding(const LinkageType& t, const Placement& p, double tol = kDefaultTol);

LabelVector label_vector(const LinkageType& t, const Placement& p, double tol = kDefaultTol);

enum class NormalizeMode { Pointed, Reduced };

Placement normalize(const LinkageType& t, const Placement& p, NormalizeMode mode);

// Distance in (R^3)^V over the vertices of the placement keys.
double placement_distance(const Placement& a, const Placement& b);

Placement lerp(const Placement& a, const Placement& b, double s);

} // namespace linkspace
