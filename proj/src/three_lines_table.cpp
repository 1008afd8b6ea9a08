// Cell data for the space of three oriented lines through the origin.
//
// One copy per label triple (d12, d13, d23). Each copy starts as the product of
// a torus T (angle pair) and a square S, then parts of T are collapsed over the
// boundary of S:
//   over the sides s1, n1    T collapses onto the diagonal circle a (P = Q, b -> a)
//   over the sides s2, n2    T collapses onto the circle c + d (a, b -> c + d)
//   over the corners         T collapses to a point
// Copies are then glued along the cells listed in kLost.
#include <algorithm>
#include <map>
#include <set>

#include "linkspace/error.hpp"
#include "linkspace/lines.hpp"

namespace linkspace::three_lines {

namespace {

CWComplex make_torus() {
    CWComplex t;
    t.add_cell(0, "P");
    t.add_cell(0, "Q");
    t.add_cell(1, "a");                      // diagonal through P
    t.add_cell(1, "b");                      // shifted diagonal through Q
    t.add_cell(1, "c", {{"Q", 1}, {"P", -1}});
    t.add_cell(1, "d", {{"P", 1}, {"Q", -1}});
    t.add_cell(2, "K", {{"b", 1}, {"a", -1}});
    t.add_cell(2, "L", {{"a", 1}, {"b", -1}});
    return t;
}

CWComplex make_square() {
    CWComplex s;
    for (const char* v : {"O", "V", "W", "X", "Y"}) s.add_cell(0, v);
    s.add_cell(1, "e", {{"V", 1}, {"O", -1}});
    s.add_cell(1, "f", {{"W", 1}, {"O", -1}});
    s.add_cell(1, "g", {{"X", 1}, {"O", -1}});
    s.add_cell(1, "h", {{"Y", 1}, {"O", -1}});
    s.add_cell(1, "s1", {{"W", 1}, {"V", -1}});
    s.add_cell(1, "n1", {{"X", 1}, {"Y", -1}});
    s.add_cell(1, "s2", {{"Y", 1}, {"V", -1}});
    s.add_cell(1, "n2", {{"X", 1}, {"W", -1}});
    s.add_cell(2, "A", {{"f", 1}, {"s1", -1}, {"e", -1}});
    s.add_cell(2, "B", {{"e", 1}, {"s2", 1}, {"h", -1}});
    s.add_cell(2, "C", {{"h", 1}, {"n1", 1}, {"g", -1}});
    s.add_cell(2, "D", {{"g", 1}, {"n2", -1}, {"f", -1}});
    return s;
}

const std::set<std::string> kInner = {"O", "e", "f", "g", "h", "A", "B", "C", "D"};
const std::set<std::string> kSide1 = {"s1", "n1"};
const std::set<std::string> kSide2 = {"s2", "n2"};
const std::set<std::string> kCorner = {"V", "W", "X", "Y"};

// 0: 1-2 label, 1: 1-3 label, 2: 2-3 label
const std::map<std::string, std::vector<int>> kLost = {
    {"a*e", {2}}, {"a*g", {2}}, {"a*O", {2}}, {"P*e", {2}}, {"P*g", {2}},
    {"b*f", {2}}, {"b*h", {2}}, {"b*O", {2}}, {"Q*f", {2}}, {"Q*h", {2}},
    {"P*O", {2}}, {"Q*O", {2}},
    {"a*s1", {0}}, {"a*n1", {0}}, {"P*s1", {0}}, {"P*n1", {0}},
    {"c*s2", {1}}, {"d*s2", {1}}, {"c*n2", {1}}, {"d*n2", {1}},
    {"P*s2", {1}}, {"Q*s2", {1}}, {"P*n2", {1}}, {"Q*n2", {1}},
    {"V", {0, 1, 2}}, {"W", {0, 1, 2}}, {"X", {0, 1, 2}}, {"Y", {0, 1, 2}},
};

} // namespace

const CWComplex& torus() {
    static const CWComplex t = make_torus();
    return t;
}

const CWComplex& square() {
    static const CWComplex s = make_square();
    return s;
}

std::vector<std::pair<CellRef, long>> collapse(const std::string& sigma, const std::string& tau) {
    if (!torus().has_cell(sigma) || !square().has_cell(tau))
        throw Error(ErrorKind::InvalidArgument, "unknown cell " + sigma + "*" + tau);
    if (kInner.count(tau)) return {{{sigma, tau}, 1}};
    if (kCorner.count(tau)) {
        if (sigma == "P" || sigma == "Q") return {{{"", tau}, 1}};
        return {};
    }
    if (kSide1.count(tau)) {
        if (sigma == "P" || sigma == "Q") return {{{"P", tau}, 1}};
        if (sigma == "a" || sigma == "b") return {{{"a", tau}, 1}};
        return {};
    }
    // kSide2
    if (sigma == "P" || sigma == "Q" || sigma == "c" || sigma == "d") return {{{sigma, tau}, 1}};
    if (sigma == "a" || sigma == "b") return {{{"c", tau}, 1}, {{"d", tau}, 1}};
    return {};
}

std::vector<CellRef> surviving_cells() {
    std::set<std::pair<int, std::string>> seen;
    std::vector<std::pair<int, CellRef>> all;
    for (int i = 0; i <= torus().dimension(); ++i)
        for (const auto& s : torus().cells(i))
            for (int j = 0; j <= square().dimension(); ++j)
                for (const auto& t : square().cells(j))
                    for (const auto& [ref, c] : collapse(s, t)) {
                        const int dim = (ref.torus.empty() ? 0 : torus().dim_of(ref.torus)) + square().dim_of(ref.square);
                        if (seen.insert({dim, ref.name()}).second) all.push_back({dim, ref});
                    }
    std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<CellRef> out;
    for (const auto& [d, r] : all) out.push_back(r);
    return out;
}

std::vector<int> lost_coordinates(const CellRef& c, ZeroCellRule rule) {
    const std::string n = c.name();
    if (rule == ZeroCellRule::AllCopies && (n == "P*O" || n == "Q*O")) return {0, 1, 2};
    auto it = kLost.find(n);
    return it == kLost.end() ? std::vector<int>{} : it->second;
}

} // namespace linkspace::three_lines
