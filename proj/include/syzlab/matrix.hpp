#pragma once

/*
 * Sparse matrices with exact rational entries.  Entries are kept sorted by
 * (row, col); explicit zeros and duplicate coordinates are construction
 * errors.  The textual dump format is a "rows cols" header followed by one
 * "row col num/den" line per entry.
 */

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace syzlab {

struct matrix_entry {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    Rational value;
};

class exact_matrix {
  public:
    exact_matrix() = default;

    exact_matrix(std::size_t rows, std::size_t cols, std::vector<matrix_entry> entries = {})
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(), [](const matrix_entry& a, const matrix_entry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            if (e.row >= rows_ || e.col >= cols_)
                throw index_error("matrix entry (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ") outside " + std::to_string(rows_) +
                                  "x" + std::to_string(cols_));
            if (e.value == 0) throw index_error("explicit zero entry in sparse matrix");
            if (i > 0 && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col)
                throw index_error("duplicate matrix entry at (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ")");
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<matrix_entry>& entries() const { return entries_; }

    exact_matrix transpose() const {
        std::vector<matrix_entry> t;
        t.reserve(entries_.size());
        for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
        return exact_matrix(cols_, rows_, std::move(t));
    }

    bool operator==(const exact_matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ &&
               entries_.size() == other.entries_.size() &&
               std::equal(entries_.begin(), entries_.end(), other.entries_.begin(),
                          [](const matrix_entry& a, const matrix_entry& b) {
                              return a.row == b.row && a.col == b.col && a.value == b.value;
                          });
    }

    void dump(std::ostream& os) const {
        os << rows_ << ' ' << cols_ << '\n';
        for (const auto& e : entries_)
            os << e.row << ' ' << e.col << ' ' << rational_to_string(e.value) << '\n';
    }

    std::string dump_string() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

    static exact_matrix parse(std::istream& is) {
        std::size_t rows = 0, cols = 0;
        if (!(is >> rows >> cols)) throw parse_error("matrix dump: missing 'rows cols' header");
        std::vector<matrix_entry> entries;
        std::uint64_t r = 0, c = 0;
        std::string value;
        while (is >> r >> c >> value) {
            if (r > UINT32_MAX || c > UINT32_MAX) throw parse_error("matrix dump: index too large");
            entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                               parse_rational(value)});
        }
        if (!is.eof() && is.fail()) {
            is.clear();
            std::string tail;
            is >> tail;
            throw parse_error("matrix dump: malformed entry near '" + tail + "'");
        }
        return exact_matrix(rows, cols, std::move(entries));
    }

    static exact_matrix parse_string(const std::string& text) {
        std::istringstream is(text);
        return parse(is);
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<matrix_entry> entries_;
};

// Accumulating builder: repeated coordinates are summed, zero sums dropped.
class matrix_builder {
  public:
    matrix_builder(std::size_t rows, std::size_t cols, std::size_t entry_budget = 0)
        : rows_(rows), cols_(cols), budget_(entry_budget) {}

    void add(std::size_t row, std::size_t col, const Rational& value) {
        if (value == 0) return;
        if (row >= rows_ || col >= cols_) throw index_error("matrix_builder: entry out of range");
        const std::uint64_t key = (static_cast<std::uint64_t>(row) << 32) | col;
        auto [it, inserted] = cells_.try_emplace(key, value);
        if (!inserted) it->second += value;
        if (budget_ && cells_.size() > budget_)
            throw size_budget_exceeded("matrix exceeds entry budget of " + std::to_string(budget_) +
                                       " (" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")");
    }

    exact_matrix build() const {
        std::vector<matrix_entry> entries;
        entries.reserve(cells_.size());
        for (const auto& [key, value] : cells_) {
            if (value == 0) continue;
            entries.push_back({static_cast<std::uint32_t>(key >> 32),
                               static_cast<std::uint32_t>(key & 0xffffffffu), value});
        }
        return exact_matrix(rows_, cols_, std::move(entries));
    }

  private:
    std::size_t rows_, cols_, budget_;
    std::unordered_map<std::uint64_t, Rational> cells_;
};

// True iff a * b == 0, with b applied first (matrices act on column vectors,
// so the product needs cols(a) == rows(b)).  Accumulates one product column
// at a time; nothing is densified.
inline bool compose_is_zero(const exact_matrix& a, const exact_matrix& b) {
    if (a.cols() != b.rows())
        throw dimension_mismatch("compose: " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " cannot follow " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    // column-indexed view of both factors
    std::vector<std::vector<const matrix_entry*>> a_cols(a.cols()), b_cols(b.cols());
    for (const auto& e : a.entries()) a_cols[e.col].push_back(&e);
    for (const auto& e : b.entries()) b_cols[e.col].push_back(&e);

    std::unordered_map<std::uint32_t, Rational> acc;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        acc.clear();
        for (const matrix_entry* eb : b_cols[c])
            for (const matrix_entry* ea : a_cols[eb->row]) {
                auto [it, inserted] = acc.try_emplace(ea->row, Rational(ea->value * eb->value));
                if (!inserted) it->second += ea->value * eb->value;
            }
        for (const auto& [row, value] : acc)
            if (value != 0) return false;
    }
    return true;
}

}  // namespace syzlab
