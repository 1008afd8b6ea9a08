#include "linkspace/cw_complex.hpp"

#include "linkspace/error.hpp"

namespace linkspace {

std::size_t CWComplex::add_cell(int dim, const std::string& id, const Chain& boundary) {
    if (dim < 0) throw Error(ErrorKind::InvalidArgument, "negative cell dimension");
    if (where_.count(id)) throw Error(ErrorKind::InvalidArgument, "duplicate cell '" + id + "'");
    Chain bd;
    for (const auto& [face, c] : boundary) {
        if (c == 0) continue;
        auto it = where_.find(face);
        if (it == where_.end() || it->second.first != dim - 1)
            throw Error(ErrorKind::InvalidArgument, "cell '" + id + "' has a bad face '" + face + "'");
        bd[face] = c;
    }
    if (static_cast<int>(cells_.size()) <= dim) {
        cells_.resize(dim + 1);
        bd_.resize(dim + 1);
    }
    cells_[dim].push_back(id);
    bd_[dim].push_back(bd);
    where_[id] = {dim, cells_[dim].size() - 1};
    return cells_[dim].size() - 1;
}

const std::vector<std::string>& CWComplex::cells(int k) const {
    static const std::vector<std::string> none;
    if (k < 0 || k > dimension()) return none;
    return cells_[k];
}

std::size_t CWComplex::count(int k) const { return cells(k).size(); }

std::size_t CWComplex::total_cells() const { return where_.size(); }

int CWComplex::dim_of(const std::string& id) const {
    auto it = where_.find(id);
    if (it == where_.end()) throw Error(ErrorKind::InvalidArgument, "unknown cell '" + id + "'");
    return it->second.first;
}

std::size_t CWComplex::index_of(const std::string& id) const {
    auto it = where_.find(id);
    if (it == where_.end()) throw Error(ErrorKind::InvalidArgument, "unknown cell '" + id + "'");
    return it->second.second;
}

const Chain& CWComplex::boundary_of(const std::string& id) const {
    const auto& w = where_.at(id);
    return bd_[w.first][w.second];
}

std::vector<BoundaryEntry> CWComplex::boundary_entries(int k) const {
    std::vector<BoundaryEntry> out;
    if (k <= 0 || k > dimension()) return out;
    for (std::size_t col = 0; col < cells_[k].size(); ++col)
        for (const auto& [face, c] : bd_[k][col]) out.push_back({where_.at(face).second, col, c});
    return out;
}

Chain CWComplex::boundary(const Chain& c) const {
    Chain out;
    for (const auto& [cell, coeff] : c)
        for (const auto& [face, k] : boundary_of(cell)) {
            long& slot = out[face];
            slot += coeff * k;
            if (slot == 0) out.erase(face);
        }
    return out;
}

bool CWComplex::is_chain_complex() const {
    for (int k = 2; k <= dimension(); ++k)
        for (const auto& bd : bd_[k])
            if (!boundary(bd).empty()) return false;
    return true;
}

CWComplex disjoint_union(const CWComplex& a, const CWComplex& b, const std::string& pa, const std::string& pb) {
    CWComplex out;
    const int top = std::max(a.dimension(), b.dimension());
    for (int k = 0; k <= top; ++k)
        for (const auto& [src, pre] : {std::pair{&a, pa}, std::pair{&b, pb}})
            for (const auto& id : src->cells(k)) {
                Chain bd;
                for (const auto& [f, c] : src->boundary_of(id)) bd[pre + f] = c;
                out.add_cell(k, pre + id, bd);
            }
    return out;
}

CWComplex product(const CWComplex& a, const CWComplex& b) {
    CWComplex out;
    const int top = a.dimension() + b.dimension();
    for (int n = 0; n <= top; ++n)
        for (int i = 0; i <= a.dimension(); ++i) {
            const int j = n - i;
            if (j < 0 || j > b.dimension()) continue;
            for (const auto& x : a.cells(i))
                for (const auto& y : b.cells(j)) {
                    Chain bd;
                    for (const auto& [f, c] : a.boundary_of(x)) bd[f + "*" + y] += c;
                    const long sign = i % 2 == 0 ? 1 : -1;
                    for (const auto& [f, c] : b.boundary_of(y)) bd[x + "*" + f] += sign * c;
                    out.add_cell(n, x + "*" + y, bd);
                }
        }
    return out;
}

} // namespace linkspace
