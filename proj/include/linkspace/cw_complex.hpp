#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linkspace {

struct BoundaryEntry {
    std::size_t row;  // index of a (k-1)-cell
    std::size_t col;  // index of a k-cell
    long coeff;
};

using Chain = std::map<std::string, long>;

class CWComplex {
public:
    // Boundary names cells of dimension dim-1 that already exist.
    std::size_t add_cell(int dim, const std::string& id, const Chain& boundary = {});

    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    const std::vector<std::string>& cells(int k) const;
    std::size_t count(int k) const;
    std::size_t total_cells() const;
    bool has_cell(const std::string& id) const { return where_.count(id) > 0; }
    int dim_of(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;

    const Chain& boundary_of(const std::string& id) const;
    // entries of the matrix of the k-th boundary map, columns are k-cells
    std::vector<BoundaryEntry> boundary_entries(int k) const;
    Chain boundary(const Chain& c) const;

    bool is_chain_complex() const;

private:
    std::vector<std::vector<std::string>> cells_;
    std::vector<std::vector<Chain>> bd_;
    std::map<std::string, std::pair<int, std::size_t>> where_;
};

// Cells renamed with a prefix.
CWComplex disjoint_union(const CWComplex& a, const CWComplex& b, const std::string& prefix_a = "L:",
                         const std::string& prefix_b = "R:");

// Product cells named "x*y" with the usual sign rule.
CWComplex product(const CWComplex& a, const CWComplex& b);

} // namespace linkspace
