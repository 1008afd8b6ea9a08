#pragma once
#include <optional>
#include <string>
#include <vector>

#include "linkspace/cw_complex.hpp"
#include "linkspace/geom.hpp"
#include "linkspace/linkage.hpp"
#include "linkspace/virtual_space.hpp"

namespace linkspace {

struct OrientedLine {
    Dir3 v;    // unit direction
    Point3 x;  // foot of the perpendicular from the origin
};

OrientedLine line_normal_form(const Point3& anchor, const Vec3& direction);

// Linkage of n oriented lines "l1".."ln"; line i runs from "l<i>.o" to "l<i>.d".
Linkage lines_linkage(std::size_t n);
Placement lines_placement(const std::vector<OrientedLine>& lines, double scale = 1.0);

VirtualConfiguration retract_to_origin(const std::vector<OrientedLine>& lines, const LabelVector& labels,
                                       double tol = kDefaultTol);

struct TwoLineChart {
    double epsilon = 0.0;
    double x = 0.0;
    double phi = 0.0;
    double theta = 0.0;
};

TwoLineChart two_line_canonical(const TwoLineChart& chart);
bool charts_equivalent(const TwoLineChart& a, const TwoLineChart& b);

struct PairSpaceDescriptor {
    std::string kinds;
    std::string chart;
    std::vector<std::string> relations;
    std::optional<std::string> slit_condition;
    std::optional<std::string> homotopy_type;
    std::string construction;
    bool completion_equals_blowup = true;
    std::string framed_factors;
};

// params: the segment length when one of the kinds is a segment.
PairSpaceDescriptor pair_space_descriptor(EdgeKind k1, EdgeKind k2, std::optional<double> segment_length = std::nullopt);

CWComplex build_two_line_complex();

// How the cells P*O and Q*O are glued across the eight label copies.
enum class ZeroCellRule {
    AllCopies,     // one class each, as the identification list states
    PerPairLabel,  // identified only across the 2-3 label
};

CWComplex build_three_line_complex(ZeroCellRule rule = ZeroCellRule::AllCopies);

// (K+L)x(A+B+C+D) in each of the eight copies.
std::vector<Chain> three_line_fundamental_cycles();

// Pieces of the three-line construction, exposed for auditing.
namespace three_lines {

struct CellRef {
    std::string torus;   // P,Q,a,b,c,d,K,L or "" for a collapsed corner
    std::string square;  // O,V,W,X,Y,e,f,g,h,s1,n1,s2,n2,A,B,C,D
    std::string name() const { return torus.empty() ? square : torus + "*" + square; }
};

const CWComplex& torus();
const CWComplex& square();
// Image of a product cell under the collapses, as a signed sum of surviving cells.
std::vector<std::pair<CellRef, long>> collapse(const std::string& torus_cell, const std::string& square_cell);
// Surviving cells of one copy, by dimension then name.
std::vector<CellRef> surviving_cells();
// Label coordinates (0: 1-2, 1: 1-3, 2: 2-3) forgotten by the identification.
std::vector<int> lost_coordinates(const CellRef& c, ZeroCellRule rule);

} // namespace three_lines

} // namespace linkspace
