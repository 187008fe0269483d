// Sparse exact-rational matrices and fraction-free rank.
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tmesh {

/// Ties a row or column index to a (face, monomial) pair.
struct IndexLabel {
    enum class Face : char { Cell, Edge, Vertex, Segment, Generator };
    Face face = Face::Cell;
    int id = -1;
    int i = 0; // exponent (or Taylor order) in s
    int j = 0; // exponent (or Taylor order) in t

    std::string str() const
    {
        static constexpr const char* names[] = {"cell", "edge", "vertex", "segment", "generator"};
        return std::string(names[static_cast<int>(face)]) + " " + std::to_string(id) + " s^" + std::to_string(i)
               + " t^" + std::to_string(j);
    }
};

struct MatrixEntry {
    int row = 0;
    int col = 0;
    Rational value;
};

class SparseRationalMatrix {
public:
    SparseRationalMatrix() = default;

    int add_row(IndexLabel label)
    {
        row_labels_.push_back(label);
        return rows() - 1;
    }
    int add_col(IndexLabel label)
    {
        col_labels_.push_back(label);
        return cols() - 1;
    }

    /// Adds `value` to entry (row, col). Zeros are dropped by compress().
    void add(int row, int col, const Rational& value)
    {
        if (value != 0) entries_.push_back({row, col, value});
        compressed_ = false;
    }

    int rows() const { return static_cast<int>(row_labels_.size()); }
    int cols() const { return static_cast<int>(col_labels_.size()); }

    const std::vector<IndexLabel>& row_labels() const { return row_labels_; }
    const std::vector<IndexLabel>& col_labels() const { return col_labels_; }

    /// Entries sorted by (row, col), duplicates summed, zeros removed.
    const std::vector<MatrixEntry>& entries()
    {
        compress();
        return entries_;
    }

    std::vector<MatrixEntry> entries() const
    {
        if (compressed_) return entries_;
        SparseRationalMatrix copy;
        copy.entries_ = entries_;
        copy.compressed_ = false;
        copy.compress();
        return std::move(copy.entries_);
    }

    void compress()
    {
        if (compressed_) return;
        std::sort(entries_.begin(), entries_.end(),
                  [](const MatrixEntry& a, const MatrixEntry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
        std::vector<MatrixEntry> merged;
        merged.reserve(entries_.size());
        for (auto& e : entries_) {
            if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
                merged.back().value += e.value;
            else
                merged.push_back(std::move(e));
        }
        std::erase_if(merged, [](const MatrixEntry& e) { return e.value == 0; });
        entries_ = std::move(merged);
        compressed_ = true;
    }

    /// Triplet text format: `rows cols` header, then `r c num/den` lines.
    void write_triplets(std::ostream& os) const
    {
        os << rows() << " " << cols() << "\n";
        for (const auto& e : entries()) os << e.row << " " << e.col << " " << to_string(e.value) << "\n";
    }

private:
    std::vector<IndexLabel> row_labels_;
    std::vector<IndexLabel> col_labels_;
    std::vector<MatrixEntry> entries_;
    bool compressed_ = true;
};

namespace detail {

using SparseIntRow = std::vector<std::pair<int, Integer>>;

/// Divides by the gcd of all entries and makes the leading entry positive.
inline void normalize_row(SparseIntRow& row)
{
    if (row.empty()) return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1) {
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

/// row := (b/g) * row - (a/g) * pivot, where a, b are the leading entries.
inline SparseIntRow eliminate(const SparseIntRow& row, const SparseIntRow& pivot)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), row.front().second.get_mpz_t(), pivot.front().second.get_mpz_t());
    Integer row_scale = pivot.front().second / g;
    Integer pivot_scale = row.front().second / g;
    SparseIntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 1, j = 1;
    Integer tmp;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, row_scale * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -pivot_scale * pivot[j].second);
            ++j;
        } else {
            tmp = row_scale * row[i].second - pivot_scale * pivot[j].second;
            if (tmp != 0) out.emplace_back(row[i].first, tmp);
            ++i;
            ++j;
        }
    }
    normalize_row(out);
    return out;
}

} // namespace detail

namespace detail {

/// Row of rationals with denominators cleared and content removed.
inline SparseIntRow integer_row(const std::vector<std::pair<int, Rational>>& entries)
{
    Integer lcm = 1;
    for (const auto& [c, v] : entries) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    SparseIntRow row;
    row.reserve(entries.size());
    for (const auto& [c, v] : entries) {
        if (v == 0) continue;
        row.emplace_back(c, v.get_num() * (lcm / v.get_den()));
    }
    normalize_row(row);
    return row;
}

/// Echelon basis of the span of integer rows (column indices strictly
/// increasing within a row). Rows are reduced one at a time against the basis
/// with fraction-free updates, shortest-leading first to limit fill;
/// deterministic.
inline std::vector<SparseIntRow> echelon_basis(std::vector<SparseIntRow> rows, int cols)
{
    std::vector<int> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (rows[a].empty() || rows[b].empty()) return !rows[a].empty() && rows[b].empty();
        return std::make_pair(rows[a].front().first, rows[a].size()) < std::make_pair(rows[b].front().first, rows[b].size());
    });

    std::vector<int> pivot_of_col(cols, -1);
    std::vector<SparseIntRow> basis;
    for (int r : order) {
        if (static_cast<int>(basis.size()) == cols) break;
        SparseIntRow row = std::move(rows[r]);
        while (!row.empty()) {
            int lead = row.front().first;
            int p = pivot_of_col[lead];
            if (p < 0) {
                pivot_of_col[lead] = static_cast<int>(basis.size());
                basis.push_back(std::move(row));
                break;
            }
            row = eliminate(row, basis[p]);
        }
    }
    return basis;
}

inline int rank_of_rows(std::vector<SparseIntRow> rows, int cols)
{
    return static_cast<int>(echelon_basis(std::move(rows), cols).size());
}

} // namespace detail

/// Exact rank over the rationals (fraction-free elimination, no tolerances).
inline int rational_rank(const SparseRationalMatrix& matrix)
{
    using detail::SparseIntRow;
    const auto entries = matrix.entries();
    std::vector<SparseIntRow> rows(matrix.rows());
    std::vector<std::pair<int, Rational>> buffer;
    std::size_t k = 0;
    while (k < entries.size()) {
        const int r = entries[k].row;
        buffer.clear();
        for (; k < entries.size() && entries[k].row == r; ++k) buffer.emplace_back(entries[k].col, entries[k].value);
        rows[r] = detail::integer_row(buffer);
    }
    return detail::rank_of_rows(std::move(rows), matrix.cols());
}

} // namespace tmesh
