#pragma once

#include <string>
#include <vector>

#include "qseries/polyq.hpp"

namespace qseries::qdiff {

using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;

// Triangle of iterated twisted differences of a finite sequence: row k holds
// the k-th difference, one entry shorter than row k-1, with
//   rows[k+1][n] = rows[k][n+1] - q^{theta(k)} * rows[k][n].
// The constructor rejects data violating that relation.
class SeqTable {
public:
    SeqTable(std::vector<std::vector<LaurentPoly>> rows, std::vector<HalfInt> theta);

    const std::vector<std::vector<LaurentPoly>>& rows() const { return rows_; }
    const std::vector<HalfInt>& theta() const { return theta_; }
    // Number of difference levels; rows() has levels()+1 entries.
    long long levels() const { return static_cast<long long>(rows_.size()) - 1; }
    const LaurentPoly& at(long long k, long long n) const;
    // Left edge rows[k][0], the boundary sequence the triangle inverts to.
    std::vector<LaurentPoly> boundary() const;

    // Header "k,n=0,n=1,..."; one line per level, short rows padded with
    // empty cells. Cell text is the canonical polynomial form.
    std::string csv() const;

private:
    std::vector<std::vector<LaurentPoly>> rows_;
    std::vector<HalfInt> theta_;
};

// theta(k) = k, the parameter the inversion formula below assumes.
std::vector<HalfInt> canonical_theta(long long levels);

// Builds the K-level difference triangle of a. Needs K <= len(a) - 1 and a
// twist value for every level.
SeqTable delta_table(const std::vector<LaurentPoly>& a, long long K,
                     const std::vector<HalfInt>& theta);

// Inverts a boundary sequence under the canonical twist:
// a_n = sum_s b_s [n over s] for n = 0..n_max, missing b entries read as 0.
std::vector<LaurentPoly> reconstruct(const std::vector<LaurentPoly>& b, long long n_max);

// Weighted-binomial family: the sequence reconstructed from the boundary
// b_s = [s over rho] q^{(s - rho)(2r+1)/2}; vanishes for rho > n.
LaurentPoly crux_family(long long n, long long r, long long rho);

}  // namespace qseries::qdiff
