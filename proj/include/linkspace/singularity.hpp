#pragma once
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkspace/linkage.hpp"
#include "linkspace/virtual_space.hpp"

namespace linkspace {

enum class FeatureKind {
    MultiPoint,
    PairwiseMeetings,
    EdgeThroughVertex,
    VertexVertex,
    CoincidingEdges,
    ConstrainedCombination,
};

const char* feature_kind_name(FeatureKind k);

struct SingularFeature {
    FeatureKind kind = FeatureKind::PairwiseMeetings;
    // support; for edge-through-vertex: [passing edge, arm, arm], for vertex-vertex:
    // [arms of first vertex..., arms of second vertex...]
    std::vector<std::string> edges;
    std::vector<std::string> vertices;
    std::vector<EdgePair> pairs;  // crossing pairs of a pairwise feature
    std::vector<Point3> locations;
    int multiplicity = 2;
    bool transverse = false;
    std::optional<bool> coplanar;
    std::optional<bool> arms_same_side;
    bool closed_elbow = false;
    bool along_arm = false;
    bool straight_elbow = false;
    std::optional<bool> opposite_sides;
    // vertex-vertex: sides of the first elbow's arms relative to the second elbow's
    // plane, then the reverse
    std::vector<int> side_signs;
};

using PartialLabels = LabelVector;

struct SingularityReport {
    std::vector<SingularFeature> features;
    bool generic = false;
    bool catalogued = false;
    std::optional<int> preimage_count;
    std::optional<std::vector<LabelVector>> label_classes;
};

SingularityReport classify_singularity(const Linkage& l, const Placement& p, double tol = kDefaultTol);

int blowup_fiber_count(const SingularityReport& report);

// Keys naming the blow-up point(s) a virtual configuration lands on; two virtual
// configurations over the same limit are identified iff their key sets meet.
std::set<std::string> class_keys(const Linkage& l, const SingularityReport& report, const VirtualConfiguration& vc,
                                 double tol = kDefaultTol);

// Component of c = x(v1) - x(v2) in the complement of the collision loop of two
// elbows (arms p1,q1 at v1 and p2,q2 at v2): true for the component holding
// the bisector of p2,q2.
bool double_elbow_inside(const Vec3& c, const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2);

} // namespace linkspace
