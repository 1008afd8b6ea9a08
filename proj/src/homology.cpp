#include "linkspace/homology.hpp"

#include <algorithm>

#include "linkspace/error.hpp"

namespace linkspace {

namespace {

using boost::multiprecision::abs;

IntMatrix identity(std::size_t n) {
    IntMatrix I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

struct Reducer {
    IntMatrix D, U, V;
    bool track;
    std::size_t m, n;

    void swap_rows(std::size_t a, std::size_t b) {
        std::swap(D[a], D[b]);
        if (track) std::swap(U[a], U[b]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (auto& r : D) std::swap(r[a], r[b]);
        if (track)
            for (auto& r : V) std::swap(r[a], r[b]);
    }
    // row a += k * row b
    void add_row(std::size_t a, std::size_t b, const BigInt& k) {
        for (std::size_t j = 0; j < n; ++j)
            if (D[b][j] != 0) D[a][j] += k * D[b][j];
        if (track)
            for (std::size_t j = 0; j < m; ++j)
                if (U[b][j] != 0) U[a][j] += k * U[b][j];
    }
    void add_col(std::size_t a, std::size_t b, const BigInt& k) {
        for (std::size_t i = 0; i < m; ++i)
            if (D[i][b] != 0) D[i][a] += k * D[i][b];
        if (track)
            for (std::size_t i = 0; i < n; ++i)
                if (V[i][b] != 0) V[i][a] += k * V[i][b];
    }
};

} // namespace

SmithResult smith_normal_form(const IntMatrix& mat, bool with_transforms) {
    Reducer r;
    r.m = mat.size();
    r.n = r.m ? mat[0].size() : 0;
    for (const auto& row : mat)
        if (row.size() != r.n) throw Error(ErrorKind::InvalidArgument, "ragged matrix");
    r.D = mat;
    r.track = with_transforms;
    if (with_transforms) {
        r.U = identity(r.m);
        r.V = identity(r.n);
    }
    const std::size_t lim = std::min(r.m, r.n);
    std::size_t s = 0;
    for (; s < lim; ++s) {
        // smallest nonzero |entry| in the lower right block
        bool found = false;
        BigInt best;
        std::size_t bi = s, bj = s;
        for (std::size_t i = s; i < r.m; ++i)
            for (std::size_t j = s; j < r.n; ++j)
                if (r.D[i][j] != 0 && (!found || abs(r.D[i][j]) < best)) {
                    found = true;
                    best = abs(r.D[i][j]);
                    bi = i;
                    bj = j;
                }
        if (!found) break;
        r.swap_rows(s, bi);
        r.swap_cols(s, bj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = s + 1; i < r.m; ++i) {
                if (r.D[i][s] == 0) continue;
                const BigInt q = r.D[i][s] / r.D[s][s];
                r.add_row(i, s, -q);
                if (r.D[i][s] != 0) {
                    clean = false;
                    if (abs(r.D[i][s]) < abs(r.D[s][s])) r.swap_rows(s, i);
                }
            }
            for (std::size_t j = s + 1; j < r.n; ++j) {
                if (r.D[s][j] == 0) continue;
                const BigInt q = r.D[s][j] / r.D[s][s];
                r.add_col(j, s, -q);
                if (r.D[s][j] != 0) {
                    clean = false;
                    if (abs(r.D[s][j]) < abs(r.D[s][s])) r.swap_cols(s, j);
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            bool divides = true;
            for (std::size_t i = s + 1; i < r.m && divides; ++i)
                for (std::size_t j = s + 1; j < r.n; ++j)
                    if (r.D[i][j] % r.D[s][s] != 0) {
                        r.add_row(s, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (r.D[s][s] < 0) {
            for (auto& x : r.D[s]) x = -x;
            if (r.track)
                for (auto& x : r.U[s]) x = -x;
        }
    }
    SmithResult out;
    out.rank = s;
    for (std::size_t i = 0; i < s; ++i) out.factors.push_back(r.D[i][i]);
    if (with_transforms) {
        out.U = std::move(r.U);
        out.V = std::move(r.V);
        out.D = std::move(r.D);
    }
    return out;
}

IntMatrix boundary_matrix(const CWComplex& c, int k) {
    const std::size_t rows = k >= 1 ? c.count(k - 1) : 0;
    IntMatrix M(rows, std::vector<BigInt>(c.count(k), 0));
    for (const auto& e : c.boundary_entries(k)) M[e.row][e.col] = e.coeff;
    return M;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t m = a.size(), inner = b.size(), n = inner ? b[0].size() : 0;
    IntMatrix out(m, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

HomologyReport homology(const CWComplex& c) {
    if (!c.is_chain_complex()) throw Error(ErrorKind::NotAChainComplex, "not a chain complex");
    const int top = c.dimension();
    HomologyReport rep;
    if (top < 0) return rep;
    std::vector<SmithResult> snf(top + 2);
    for (int k = 1; k <= top; ++k) snf[k] = smith_normal_form(boundary_matrix(c, k));
    for (int k = 0; k <= top; ++k) {
        const std::size_t n = c.count(k);
        const std::size_t out_rank = k >= 1 ? snf[k].rank : 0;
        const std::size_t in_rank = k + 1 <= top ? snf[k + 1].rank : 0;
        rep.cell_counts.push_back(n);
        rep.betti.push_back(n - out_rank - in_rank);
        std::vector<BigInt> tor;
        if (k + 1 <= top)
            for (const auto& d : snf[k + 1].factors)
                if (d > 1) tor.push_back(d);
        rep.torsion.push_back(tor);
        const long sign = k % 2 == 0 ? 1 : -1;
        rep.euler += sign * static_cast<long>(n);
        rep.euler_from_betti += sign * static_cast<long>(rep.betti.back());
    }
    return rep;
}

std::size_t chain_rank(const CWComplex& c, int k, const std::vector<Chain>& chains) {
    IntMatrix M(chains.size(), std::vector<BigInt>(c.count(k), 0));
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (const auto& [cell, coeff] : chains[i]) {
            if (c.dim_of(cell) != k) throw Error(ErrorKind::InvalidArgument, "chain has a cell of the wrong dimension");
            M[i][c.index_of(cell)] = coeff;
        }
    return smith_normal_form(M).rank;
}

} // namespace linkspace
