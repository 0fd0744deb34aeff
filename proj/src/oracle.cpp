#include "minprod/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "minprod/errors.hpp"

namespace minprod::oracle {

TruncatedList brute_force_pairs(const TruncatedList& l1, const TruncatedList& l2,
                                const Rational& cap) {
    std::map<Rational, std::int64_t> sums;
    for (const auto& [v1, m1] : l1)
        for (const auto& [v2, m2] : l2) {
            Rational v = v1 + v2;
            if (v <= cap) sums[v] += m1 * m2;
        }
    return TruncatedList(sums.begin(), sums.end());
}

namespace {

// Multi-indices of total degree k in `vars` variables, lexicographic.
void enumerate_monomials(int vars, int k, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == vars - 1) {
        current.push_back(k);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int e = k; e >= 0; --e) {
        current.push_back(e);
        enumerate_monomials(vars, k - e, current, out);
        current.pop_back();
    }
}

std::vector<std::vector<int>> monomials(int vars, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    enumerate_monomials(vars, k, current, out);
    return out;
}

using SparseRow = std::vector<std::pair<int, Rational>>;  // (column, value), sorted

void add_scaled(SparseRow& target, const SparseRow& source, const Rational& factor) {
    SparseRow merged;
    merged.reserve(target.size() + source.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < source.size()) {
        if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
            merged.push_back(target[i++]);
        } else if (i == target.size() || source[j].first < target[i].first) {
            merged.emplace_back(source[j].first, source[j].second * factor);
            ++j;
        } else {
            Rational v = target[i].second + source[j].second * factor;
            if (v != 0) merged.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    target = std::move(merged);
}

std::int64_t rank_by_row_reduction(std::vector<SparseRow> rows, int cols) {
    std::int64_t rank = 0;
    std::vector<bool> used(rows.size(), false);
    for (int col = 0; col < cols; ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || rows[r].empty()) continue;
            if (rows[r].front().first == col) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows.size()) continue;
        used[pivot] = true;
        ++rank;
        const Rational pivot_value = rows[pivot].front().second;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || rows[r].empty() || rows[r].front().first != col) continue;
            Rational factor = -rows[r].front().second / pivot_value;
            add_scaled(rows[r], rows[pivot], factor);
        }
    }
    return rank;
}

}  // namespace

std::int64_t harmonic_multiplicity(int m, int k) {
    if (m < 1 || k < 0) throw Error("harmonic_multiplicity: need m >= 1, k >= 0");
    const int vars = m + 1;
    auto degree_k = monomials(vars, k);
    if (k < 2) return static_cast<std::int64_t>(degree_k.size());
    auto degree_k2 = monomials(vars, k - 2);

    std::map<std::vector<int>, int> column_of;
    for (std::size_t c = 0; c < degree_k.size(); ++c) column_of[degree_k[c]] = static_cast<int>(c);

    // One row per target monomial beta of degree k-2; the Laplacian sends the
    // source x^alpha to sum_i alpha_i (alpha_i - 1) x^(alpha - 2 e_i), so row
    // beta picks up the sources alpha = beta + 2 e_i.
    std::vector<SparseRow> rows;
    rows.reserve(degree_k2.size());
    for (const auto& beta : degree_k2) {
        SparseRow row;
        for (int i = 0; i < vars; ++i) {
            std::vector<int> alpha = beta;
            alpha[i] += 2;
            Rational coefficient((alpha[i]) * (alpha[i] - 1));
            row.emplace_back(column_of.at(alpha), std::move(coefficient));
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
    }

    std::int64_t rank = rank_by_row_reduction(std::move(rows), static_cast<int>(degree_k.size()));
    return static_cast<std::int64_t>(degree_k.size()) - rank;
}

std::int64_t clifford_direct_count(const std::vector<int>& dims, CountMode mode) {
    if (dims.size() < 2) throw Error("clifford_direct_count: need at least 2 factors");
    for (int d : dims)
        if (d < 1) throw Error("clifford_direct_count: factor dimensions must be >= 1");

    // Spectral bookkeeping for the running product of unit spheres:
    //   at_minus_2n : multiplicity of the least Jacobi value -2n
    //   at_minus_n  : multiplicity of the Jacobi value -n
    //   at_zero     : multiplicity of the Jacobi value 0 (the nullity)
    //   laplace_n   : multiplicity of the Laplace value n
    //   laplace_2n  : multiplicity of the Laplace value 2n
    // The unit sphere S^d contributes Laplace values 0 (simple) and d (with
    // multiplicity d+1), nothing in (d, 2d], and no Jacobi spectrum at all.
    const std::int64_t n1 = dims[0], n2 = dims[1];
    std::int64_t at_minus_2n = 1;
    std::int64_t at_minus_n = (n1 + 1) + (n2 + 1);
    std::int64_t at_zero = (n1 + 1) * (n2 + 1);
    std::int64_t laplace_n = (n1 + 1) + (n2 + 1);
    std::int64_t laplace_2n = (n1 + 1) * (n2 + 1);

    for (std::size_t j = 2; j < dims.size(); ++j) {
        const std::int64_t s = dims[j] + 1;  // dim of the new sphere's first eigenspace
        // -2n'' arises from (0,0) in the eta block and (-2n, 0) in the factor block;
        // -n'' from (n,0), (0,d), (-2n,d), (-n,0); 0 from (n,d), (2n,0), (-n,d), (0,0).
        std::int64_t new_minus_2n = at_minus_2n + 1;
        std::int64_t new_minus_n = laplace_n + s + at_minus_2n * s + at_minus_n;
        std::int64_t new_zero = laplace_n * s + laplace_2n + at_minus_n * s + at_zero;
        std::int64_t new_laplace_n = laplace_n + s;
        std::int64_t new_laplace_2n = laplace_n * s + laplace_2n;
        at_minus_2n = new_minus_2n;
        at_minus_n = new_minus_n;
        at_zero = new_zero;
        laplace_n = new_laplace_n;
        laplace_2n = new_laplace_2n;
    }

    // The only negative Jacobi values of these products are -2n and -n.
    return mode == CountMode::index ? at_minus_2n + at_minus_n : at_zero;
}

}  // namespace minprod::oracle
