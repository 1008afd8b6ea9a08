#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "linkspace/cw_complex.hpp"

namespace linkspace {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithResult {
    std::vector<BigInt> factors;  // nonzero invariant factors, each dividing the next
    std::size_t rank = 0;
    // U * m * V = D with U, V unimodular; filled when requested
    IntMatrix U, D, V;
};

SmithResult smith_normal_form(const IntMatrix& m, bool with_transforms = false);

IntMatrix boundary_matrix(const CWComplex& c, int k);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

struct HomologyReport {
    std::vector<std::size_t> cell_counts;
    std::vector<std::size_t> betti;
    std::vector<std::vector<BigInt>> torsion;  // invariant factors > 1 per degree
    long euler = 0;                            // from cell counts
    long euler_from_betti = 0;
};

HomologyReport homology(const CWComplex& c);

// Rank over Q of a set of chains viewed as vectors in C_k.
std::size_t chain_rank(const CWComplex& c, int k, const std::vector<Chain>& chains);

} // namespace linkspace
