#pragma once

#include "polycobar/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace polycobar {

using DenseMatrix = std::vector<std::vector<Integer>>;

/// Sparse integer matrix stored as (row, col, value) triplets.
struct IntMatrix {
    struct Entry {
        std::size_t row;
        std::size_t col;
        Integer value;
    };

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Entry> entries;

    /// Duplicate positions are summed.
    DenseMatrix to_dense() const {
        DenseMatrix d(rows, std::vector<Integer>(cols));
        for (const auto& e : entries) d[e.row][e.col] += e.value;
        return d;
    }

    static IntMatrix from_dense(const DenseMatrix& d) {
        IntMatrix m;
        m.rows = d.size();
        m.cols = d.empty() ? 0 : d[0].size();
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                if (d[i][j] != 0) m.entries.push_back({i, j, d[i][j]});
        return m;
    }
};

inline DenseMatrix identity_matrix(std::size_t n) {
    DenseMatrix m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    const std::size_t k = b.size();
    const std::size_t m = b.empty() ? 0 : b[0].size();
    DenseMatrix c(n, std::vector<Integer>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[t][j] != 0) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

/// D = U·M·V with U, V unimodular. `invariant_factors` are the positive
/// nonzero diagonal entries d_1 | d_2 | ...; `left`/`right` hold U and V
/// when transforms were requested.
struct SmithResult {
    std::vector<Integer> invariant_factors;
    std::optional<DenseMatrix> left;
    std::optional<DenseMatrix> right;

    std::size_t rank() const noexcept { return invariant_factors.size(); }
};

namespace detail {

/// In-place dense reduction of `a` starting at diagonal index `start`.
/// Row operations are mirrored into `u`, column operations into `v`.
inline std::vector<Integer> dense_smith(DenseMatrix& a, DenseMatrix* u, DenseMatrix* v) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<Integer> factors;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        if (u) std::swap((*u)[i], (*u)[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (auto& row : a) std::swap(row[i], row[j]);
        if (v) for (auto& row : *v) std::swap(row[i], row[j]);
    };
    // row_dst -= q * row_src
    auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t j = 0; j < cols; ++j)
            if (a[src][j] != 0) a[dst][j] -= q * a[src][j];
        if (u)
            for (std::size_t j = 0; j < rows; ++j)
                if ((*u)[src][j] != 0) (*u)[dst][j] -= q * (*u)[src][j];
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t i = 0; i < rows; ++i)
            if (a[i][src] != 0) a[i][dst] -= q * a[i][src];
        if (v)
            for (std::size_t i = 0; i < cols; ++i)
                if ((*v)[i][src] != 0) (*v)[i][dst] -= q * (*v)[i][src];
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        bool found_any = false;
        while (true) {
            // smallest nonzero entry of the trailing block
            std::size_t pi = 0, pj = 0;
            Integer best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0) {
                        Integer m = abs(a[i][j]);
                        if (best == 0 || m < best) {
                            best = m;
                            pi = i;
                            pj = j;
                            if (best == 1) goto picked;
                        }
                    }
        picked:
            if (best == 0) break;
            found_any = true;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    Integer q = a[i][t] / a[t][t];
                    if (q != 0) row_axpy(i, t, q);
                    if (a[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    Integer q = a[t][j] / a[t][t];
                    if (q != 0) col_axpy(j, t, q);
                    if (a[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility of the trailing block by the pivot
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] != 0 && a[i][j] % a[t][t] != 0) {
                        row_axpy(t, i, Integer(-1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (!found_any) break;
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            if (u) for (auto& x : (*u)[t]) x = -x;
        }
        factors.push_back(a[t][t]);
    }
    return factors;
}

/// Removes ±1 pivots by sparse elimination and returns how many were found.
/// The untouched remainder is left in `rest` for the dense pass.
inline std::size_t eliminate_unit_pivots(const IntMatrix& m, DenseMatrix& rest) {
    std::vector<std::map<std::size_t, Integer>> row(m.rows);
    std::vector<std::set<std::size_t>> col_rows(m.cols);
    for (const auto& e : m.entries) {
        if (e.value == 0) continue;
        Integer& slot = row[e.row][e.col];
        slot += e.value;
        if (slot == 0) row[e.row].erase(e.col);
    }
    for (std::size_t i = 0; i < m.rows; ++i)
        for (const auto& [j, x] : row[i]) col_rows[j].insert(i);

    std::vector<char> row_alive(m.rows, 1), col_alive(m.cols, 1);
    std::size_t units = 0;
    while (true) {
        // pick a unit entry minimizing (row length - 1) * (column length - 1)
        std::size_t pr = m.rows, pc = m.cols, best_cost = static_cast<std::size_t>(-1);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (!row_alive[i]) continue;
            for (const auto& [j, x] : row[i]) {
                if (x != 1 && x != -1) continue;
                std::size_t cost = (row[i].size() - 1) * (col_rows[j].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    pr = i;
                    pc = j;
                    if (cost == 0) break;
                }
            }
            if (best_cost == 0) break;
        }
        if (pr == m.rows) break;
        ++units;
        const Integer pivot = row[pr].at(pc);
        std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (std::size_t i : targets) {
            if (i == pr) continue;
            const Integer q = row[i].at(pc) * pivot; // pivot is its own inverse
            for (const auto& [j, x] : row[pr]) {
                Integer& slot = row[i][j];
                const bool was_zero = (slot == 0);
                slot -= q * x;
                if (slot == 0) {
                    row[i].erase(j);
                    col_rows[j].erase(i);
                } else if (was_zero) {
                    col_rows[j].insert(i);
                }
            }
        }
        // column operations clear the rest of the pivot row without touching other rows
        for (const auto& [j, x] : row[pr]) col_rows[j].erase(pr);
        row[pr].clear();
        row_alive[pr] = 0;
        col_alive[pc] = 0;
    }

    std::vector<std::size_t> live_rows, live_cols;
    std::vector<std::size_t> col_index(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        if (row_alive[i] && !row[i].empty()) live_rows.push_back(i);
    for (std::size_t j = 0; j < m.cols; ++j)
        if (col_alive[j] && !col_rows[j].empty()) {
            col_index[j] = live_cols.size();
            live_cols.push_back(j);
        }
    rest.assign(live_rows.size(), std::vector<Integer>(live_cols.size()));
    for (std::size_t r = 0; r < live_rows.size(); ++r)
        for (const auto& [j, x] : row[live_rows[r]]) rest[r][col_index[j]] = x;
    return units;
}

} // namespace detail

/// Smith normal form over ℤ. Without transforms, unit pivots are removed by
/// sparse elimination first and only the remainder is densified.
inline SmithResult smith_normal_form(const IntMatrix& m, bool with_transforms = false) {
    SmithResult result;
    if (with_transforms) {
        DenseMatrix a = m.to_dense();
        DenseMatrix u = identity_matrix(m.rows);
        DenseMatrix v = identity_matrix(m.cols);
        result.invariant_factors = detail::dense_smith(a, &u, &v);
        result.left = std::move(u);
        result.right = std::move(v);
        return result;
    }
    DenseMatrix rest;
    const std::size_t units = detail::eliminate_unit_pivots(m, rest);
    result.invariant_factors.assign(units, Integer(1));
    auto tail = detail::dense_smith(rest, nullptr, nullptr);
    result.invariant_factors.insert(result.invariant_factors.end(), tail.begin(), tail.end());
    return result;
}

/// Diagonal matrix of the given shape holding `factors`.
inline DenseMatrix smith_diagonal(std::size_t rows, std::size_t cols, const std::vector<Integer>& factors) {
    DenseMatrix d(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < factors.size(); ++i) d[i][i] = factors[i];
    return d;
}

} // namespace polycobar
