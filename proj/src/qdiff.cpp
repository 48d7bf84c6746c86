#include "qseries/qdiff.hpp"

#include <sstream>

#include "qseries/errors.hpp"
#include "qseries/qcore.hpp"

namespace qseries::qdiff {

SeqTable::SeqTable(std::vector<std::vector<LaurentPoly>> rows, std::vector<HalfInt> theta)
    : rows_(std::move(rows)), theta_(std::move(theta)) {
    if (rows_.empty() || rows_.front().empty())
        throw InvalidParameter("SeqTable: empty table");
    if (theta_.size() + 1 < rows_.size())
        throw InvalidParameter("SeqTable: twist sequence shorter than table depth");
    for (std::size_t k = 0; k + 1 < rows_.size(); ++k) {
        const auto& cur = rows_[k];
        const auto& next = rows_[k + 1];
        if (next.size() + 1 != cur.size())
            throw InvalidParameter("SeqTable: row lengths must shrink by one");
        const LaurentPoly twist = LaurentPoly::q_power(theta_[k]);
        for (std::size_t n = 0; n < next.size(); ++n)
            if (next[n] != cur[n + 1] - twist * cur[n])
                throw InvalidParameter("SeqTable: difference relation violated");
    }
}

const LaurentPoly& SeqTable::at(long long k, long long n) const {
    if (k < 0 || k >= static_cast<long long>(rows_.size()))
        throw InvalidParameter("SeqTable: level out of range");
    const auto& row = rows_[static_cast<std::size_t>(k)];
    if (n < 0 || n >= static_cast<long long>(row.size()))
        throw InvalidParameter("SeqTable: index out of range");
    return row[static_cast<std::size_t>(n)];
}

std::vector<LaurentPoly> SeqTable::boundary() const {
    std::vector<LaurentPoly> b;
    b.reserve(rows_.size());
    for (const auto& row : rows_) b.push_back(row.front());
    return b;
}

std::string SeqTable::csv() const {
    std::ostringstream out;
    const std::size_t width = rows_.front().size();
    out << "k";
    for (std::size_t n = 0; n < width; ++n) out << ",n=" << n;
    out << "\n";
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        out << k;
        for (std::size_t n = 0; n < width; ++n) {
            out << ",";
            if (n < rows_[k].size()) out << rows_[k][n].str();
        }
        out << "\n";
    }
    return out.str();
}

std::vector<HalfInt> canonical_theta(long long levels) {
    if (levels < 0) throw InvalidParameter("canonical_theta: negative depth");
    std::vector<HalfInt> t;
    t.reserve(static_cast<std::size_t>(levels));
    for (long long k = 0; k < levels; ++k) t.emplace_back(k);
    return t;
}

SeqTable delta_table(const std::vector<LaurentPoly>& a, long long K,
                     const std::vector<HalfInt>& theta) {
    if (a.empty()) throw InvalidParameter("delta_table: empty sequence");
    if (K < 0 || K > static_cast<long long>(a.size()) - 1)
        throw InvalidParameter("delta_table: depth exceeds the data");
    if (static_cast<long long>(theta.size()) < K)
        throw InvalidParameter("delta_table: twist sequence shorter than table depth");
    std::vector<std::vector<LaurentPoly>> rows{a};
    for (long long k = 0; k < K; ++k) {
        const auto& cur = rows.back();
        const LaurentPoly twist = LaurentPoly::q_power(theta[static_cast<std::size_t>(k)]);
        std::vector<LaurentPoly> next;
        next.reserve(cur.size() - 1);
        for (std::size_t n = 0; n + 1 < cur.size(); ++n)
            next.push_back(cur[n + 1] - twist * cur[n]);
        rows.push_back(std::move(next));
    }
    return SeqTable(std::move(rows),
                    std::vector<HalfInt>(theta.begin(), theta.begin() + K));
}

std::vector<LaurentPoly> reconstruct(const std::vector<LaurentPoly>& b, long long n_max) {
    if (n_max < 0) throw InvalidParameter("reconstruct: negative range");
    std::vector<LaurentPoly> a;
    a.reserve(static_cast<std::size_t>(n_max) + 1);
    for (long long n = 0; n <= n_max; ++n) {
        LaurentPoly acc = LaurentPoly::zero();
        const long long top = std::min(n, static_cast<long long>(b.size()) - 1);
        for (long long s = 0; s <= top; ++s)
            acc += b[static_cast<std::size_t>(s)] * qcore::q_binomial(n, s);
        a.push_back(std::move(acc));
    }
    return a;
}

LaurentPoly crux_family(long long n, long long r, long long rho) {
    if (n < 0 || r < 0 || rho < 0) throw InvalidParameter("crux_family: negative parameter");
    LaurentPoly acc = LaurentPoly::zero();
    for (long long s = rho; s <= n; ++s)
        acc += qcore::q_binomial(n, s) * qcore::q_binomial(s, rho) *
               LaurentPoly::q_power(HalfInt::halves((s - rho) * (2 * r + 1)));
    return acc;
}

}  // namespace qseries::qdiff
