#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hitcalc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

/// Dense row over F_2 with a fixed number of columns. Column c is bit c % 64 of word
/// c / 64; bits at positions >= width are always zero.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t width) : width_(width), words_(words_for(width), 0) {}
    BitRow(std::size_t width, std::span<const std::size_t> columns);

    std::size_t width() const { return width_; }
    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    bool test(std::size_t c) const { return (words_[c / kWordBits] >> (c % kWordBits)) & 1; }
    void set(std::size_t c) { words_[c / kWordBits] |= Word{1} << (c % kWordBits); }
    void reset(std::size_t c) { words_[c / kWordBits] &= ~(Word{1} << (c % kWordBits)); }
    void flip(std::size_t c) { words_[c / kWordBits] ^= Word{1} << (c % kWordBits); }

    bool is_zero() const;
    std::size_t popcount() const;
    /// Lowest set column; under the descending monomial column order this is the
    /// largest monomial of the row.
    std::optional<std::size_t> leading_column() const;
    std::vector<std::size_t> set_columns() const;

    BitRow& operator^=(const BitRow& other);
    friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }
    friend bool operator==(const BitRow&, const BitRow&) = default;

private:
    std::size_t width_ = 0;
    std::vector<Word> words_;
};

/// Fully reduced row echelon form of a subspace of F_2^width. Immutable once built.
class EchelonBasis {
public:
    EchelonBasis() = default;
    explicit EchelonBasis(std::size_t width);

    std::size_t width() const { return width_; }
    std::size_t rank() const { return leading_.size(); }
    std::size_t words_per_row() const { return stride_; }

    /// Rows in strictly increasing leading-column order.
    std::span<const Word> row(std::size_t k) const { return {data_.data() + k * stride_, stride_}; }
    BitRow row_copy(std::size_t k) const;
    const std::vector<std::size_t>& leading_columns() const { return leading_; }
    bool is_leading(std::size_t c) const { return lead_mask_.test(c); }
    const BitRow& leading_mask() const { return lead_mask_; }

    /// Canonical representative of v modulo the row space, in place.
    void reduce_in_place(std::span<Word> v) const;

    std::size_t storage_bytes() const { return data_.size() * sizeof(Word); }

private:
    friend class EchelonBuilder;
    std::size_t width_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
    std::vector<std::size_t> leading_;
    std::vector<std::int64_t> row_of_column_;  // -1 when the column is not leading
    BitRow lead_mask_;
};

/// Incremental construction of an EchelonBasis. New pivot rows are held in a small batch
/// and folded into the main rows in one pass when the batch fills, which keeps the main
/// rows fully reduced between folds without touching every row on every insert.
class EchelonBuilder {
public:
    explicit EchelonBuilder(std::size_t width, std::size_t batch_size = 64);
    /// Starts from an existing basis.
    explicit EchelonBuilder(const EchelonBasis& basis, std::size_t batch_size = 64);

    std::size_t width() const { return width_; }
    std::size_t rank() const { return main_lead_.size() + batch_lead_.size(); }

    /// Returns true when v was independent of the current span.
    bool insert(std::span<const Word> v);
    bool insert(const BitRow& v);
    /// v given by its set columns (any order, no duplicates).
    bool insert_columns(std::span<const std::uint32_t> columns);

    EchelonBasis finish() &&;

private:
    bool insert_scratch();
    void flush();
    Word* main_row(std::size_t k) { return main_.data() + k * stride_; }

    std::size_t width_;
    std::size_t stride_;
    std::size_t batch_size_;
    std::vector<Word> main_;
    std::vector<std::size_t> main_lead_;
    std::vector<Word> batch_;
    std::vector<std::size_t> batch_lead_;
    std::vector<std::int64_t> owner_;  // column -> main row (>= 0), batch row (-2 - k), or -1
    BitRow main_mask_;
    BitRow batch_mask_;
    std::vector<Word> scratch_;
};

/// Reduced row echelon form of the span of `rows`. All rows must share one width.
EchelonBasis echelonize(std::span<const BitRow> rows, std::size_t width);
EchelonBasis echelonize(std::span<const BitRow> rows);

/// Canonical representative of v modulo span(basis); zero iff v lies in the span.
BitRow reduce(const BitRow& v, const EchelonBasis& basis);

/// Returns the enlarged basis and whether v was independent.
std::pair<EchelonBasis, bool> incremental_insert(const EchelonBasis& basis, const BitRow& v);

/// Basis of { c in F_2^rows.size() : sum_k c_k rows[k] = 0 }.
std::vector<BitRow> left_kernel(std::span<const BitRow> rows, std::size_t width);

/// Throws std::invalid_argument when widths differ.
void require_width(std::size_t expected, std::size_t actual, const char* where);

}  // namespace hitcalc
