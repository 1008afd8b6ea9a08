#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "linkspace/linkage.hpp"

namespace linkspace {

// Sides |ab|, |bc|, |cd|, |da|.
struct QuadLengths {
    double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;
    double operator[](int i) const { return i == 1 ? l1 : i == 2 ? l2 : i == 3 ? l3 : l4; }
};

const std::vector<std::string>& collineation_symbols();

struct FiberEntry {
    enum class Kind { Endpoint, Span, Transition };
    Kind kind = Kind::Span;
    double alpha_from = 0.0;  // radians; equal to alpha_to for points of the arc
    double alpha_to = 0.0;
    std::string fiber;        // point | circle | closed-interval
    std::optional<std::string> at;  // "aligned" or a collineation symbol
};

struct QuadReport {
    QuadLengths input;
    QuadLengths lengths;        // after relabeling
    std::array<int, 4> source;  // lengths.l<i+1> = input side source[i]
    bool normalized = false;    // strict ordering l4 < l1 > l2 > l3 achieved
    bool ineq_sum = false;      // l1 + l4 < l2 + l3
    bool ineq_diff = false;     // |l2 - l3| < l1 - l4
    std::string arc_case;       // i | ii | iii | iv
    std::vector<std::string> collineations;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    std::vector<FiberEntry> fiber_schedule;
    bool schedule_derived = true;
    std::string schedule_text() const;
};

// Throws InfeasibleLengths or ChamberWall.
void check_quad_lengths(const QuadLengths& q);

bool collineation_feasible(const QuadLengths& q, const std::string& symbol);

QuadReport quad_chamber(const QuadLengths& q);

// Vertices "a","b","c","d".
LinkageType quad_type();
Linkage quad_linkage(const QuadLengths& q);

// Planar placement realizing a feasible collineation.
Placement collineation_placement(const QuadLengths& q, const std::string& symbol);

// Planar placement with a = 0, b on the x-axis, d at angle alpha and c on the
// same side of bd as a (flipped) or the opposite side.
Placement arc_placement(const QuadLengths& q, double alpha, bool flipped);

// Fiber type over alpha from rotating c about bd: circle when every rotation
// embeds, closed-interval otherwise.
std::string fiber_by_rotation(const QuadLengths& q, double alpha, int samples = 720);

std::optional<std::string> detect_collineation(const QuadLengths& q, const Placement& p, double tol = kDefaultTol);

struct QuadLocalModel {
    std::string symbol;
    std::string thickened_torus = "[0,ε)×S¹×S¹";
    std::string split_torus = "(−ε,0]×[0°,360°]×S¹";
    std::string gluing = "(0,θ,φ) ∈ U₁ ~ (0,θ,φ) ∈ U₂";
    std::string singular_point = "(0,0°,0°)";
    std::string convex_point = "(0,180°,0°)";
    bool split_component = true;
    bool exchanged = false;
    std::optional<std::string> exchange_rule;
};

QuadLocalModel quad_local_model(const QuadLengths& q, const std::string& symbol);

struct OpenChainDescriptor {
    std::size_t links = 0;
    std::string homotopy_type;
    std::string coordinates;
    bool homeomorphism = false;  // "≅" rather than "≃"
};

// Lengths may be +infinity at the two ends.
OpenChainDescriptor open_chain_descriptor(const std::vector<double>& lengths);

} // namespace linkspace
