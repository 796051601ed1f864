#include "hitcalc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hitcalc {

namespace {

inline void xor_words(Word* dst, const Word* src, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

inline bool test_bit(const Word* v, std::size_t c)
{
    return (v[c / kWordBits] >> (c % kWordBits)) & 1;
}

inline std::optional<std::size_t> first_set(const Word* v, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(v[i]));
    return std::nullopt;
}

// Calls f(c) for every column c set in (v & mask), using the words of v as they were on
// entry; f may modify v at columns outside the mask.
template <class F>
void for_each_masked(const Word* v, const Word* mask, std::size_t n, F&& f)
{
    for (std::size_t i = 0; i < n; ++i) {
        Word w = v[i] & mask[i];
        while (w != 0) {
            const std::size_t c = i * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
            w &= w - 1;
            f(c);
        }
    }
}

}  // namespace

void require_width(std::size_t expected, std::size_t actual, const char* where)
{
    if (expected != actual)
        throw std::invalid_argument(std::string(where) + ": width mismatch (" + std::to_string(expected) +
                                    " vs " + std::to_string(actual) + ")");
}

BitRow::BitRow(std::size_t width, std::span<const std::size_t> columns) : BitRow(width)
{
    for (auto c : columns) {
        if (c >= width) throw std::out_of_range("BitRow: column beyond width");
        flip(c);
    }
}

bool BitRow::is_zero() const
{
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitRow::popcount() const
{
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::optional<std::size_t> BitRow::leading_column() const
{
    return first_set(words_.data(), words_.size());
}

std::vector<std::size_t> BitRow::set_columns() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i)
        for (Word w = words_[i]; w != 0; w &= w - 1)
            out.push_back(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
    return out;
}

BitRow& BitRow::operator^=(const BitRow& other)
{
    require_width(width_, other.width_, "BitRow xor");
    xor_words(words_.data(), other.words_.data(), words_.size());
    return *this;
}

EchelonBasis::EchelonBasis(std::size_t width)
    : width_(width), stride_(words_for(width)), row_of_column_(width, -1), lead_mask_(width)
{
}

BitRow EchelonBasis::row_copy(std::size_t k) const
{
    BitRow r(width_);
    std::copy_n(data_.data() + k * stride_, stride_, r.words().data());
    return r;
}

void EchelonBasis::reduce_in_place(std::span<Word> v) const
{
    require_width(stride_, v.size(), "EchelonBasis::reduce");
    for_each_masked(v.data(), lead_mask_.words().data(), stride_, [&](std::size_t c) {
        xor_words(v.data(), data_.data() + static_cast<std::size_t>(row_of_column_[c]) * stride_, stride_);
    });
}

EchelonBuilder::EchelonBuilder(std::size_t width, std::size_t batch_size)
    : width_(width),
      stride_(words_for(width)),
      batch_size_(std::max<std::size_t>(1, batch_size)),
      owner_(width, -1),
      main_mask_(width),
      batch_mask_(width),
      scratch_(stride_, 0)
{
}

EchelonBuilder::EchelonBuilder(const EchelonBasis& basis, std::size_t batch_size)
    : EchelonBuilder(basis.width(), batch_size)
{
    main_ = basis.data_;
    main_lead_ = basis.leading_;
    for (std::size_t k = 0; k < main_lead_.size(); ++k) owner_[main_lead_[k]] = static_cast<std::int64_t>(k);
    main_mask_ = basis.lead_mask_;
}

bool EchelonBuilder::insert(std::span<const Word> v)
{
    require_width(stride_, v.size(), "EchelonBuilder::insert");
    std::copy(v.begin(), v.end(), scratch_.begin());
    return insert_scratch();
}

bool EchelonBuilder::insert(const BitRow& v)
{
    require_width(width_, v.width(), "EchelonBuilder::insert");
    return insert(v.words());
}

bool EchelonBuilder::insert_columns(std::span<const std::uint32_t> columns)
{
    std::fill(scratch_.begin(), scratch_.end(), Word{0});
    for (auto c : columns) {
        if (c >= width_) throw std::out_of_range("EchelonBuilder::insert_columns: column beyond width");
        scratch_[c / kWordBits] ^= Word{1} << (c % kWordBits);
    }
    return insert_scratch();
}

bool EchelonBuilder::insert_scratch()
{
    Word* v = scratch_.data();
    // Main rows carry no bits at other main pivots, so one scan of the entry state suffices.
    for_each_masked(v, main_mask_.words().data(), stride_, [&](std::size_t c) {
        xor_words(v, main_row(static_cast<std::size_t>(owner_[c])), stride_);
    });
    // Batch rows carry no bits at main pivots nor at other batch pivots.
    for_each_masked(v, batch_mask_.words().data(), stride_, [&](std::size_t c) {
        const auto k = static_cast<std::size_t>(-2 - owner_[c]);
        xor_words(v, batch_.data() + k * stride_, stride_);
    });
    const auto lead = first_set(v, stride_);
    if (!lead) return false;
    const std::size_t p = *lead;
    for (std::size_t k = 0; k < batch_lead_.size(); ++k) {
        Word* r = batch_.data() + k * stride_;
        if (test_bit(r, p)) xor_words(r, v, stride_);
    }
    batch_.insert(batch_.end(), scratch_.begin(), scratch_.end());
    owner_[p] = -2 - static_cast<std::int64_t>(batch_lead_.size());
    batch_lead_.push_back(p);
    batch_mask_.set(p);
    if (batch_lead_.size() >= batch_size_) flush();
    return true;
}

void EchelonBuilder::flush()
{
    if (batch_lead_.empty()) return;
    const Word* bmask = batch_mask_.words().data();
    for (std::size_t k = 0; k < main_lead_.size(); ++k) {
        Word* r = main_row(k);
        for_each_masked(r, bmask, stride_, [&](std::size_t c) {
            const auto b = static_cast<std::size_t>(-2 - owner_[c]);
            xor_words(r, batch_.data() + b * stride_, stride_);
        });
    }
    for (std::size_t b = 0; b < batch_lead_.size(); ++b) {
        owner_[batch_lead_[b]] = static_cast<std::int64_t>(main_lead_.size());
        main_lead_.push_back(batch_lead_[b]);
        main_mask_.set(batch_lead_[b]);
    }
    main_.insert(main_.end(), batch_.begin(), batch_.end());
    batch_.clear();
    batch_lead_.clear();
    batch_mask_ = BitRow(width_);
}

EchelonBasis EchelonBuilder::finish() &&
{
    flush();
    EchelonBasis out(width_);
    std::vector<std::size_t> order(main_lead_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return main_lead_[a] < main_lead_[b]; });
    out.data_.resize(order.size() * stride_);
    out.leading_.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::copy_n(main_row(order[k]), stride_, out.data_.data() + k * stride_);
        const std::size_t c = main_lead_[order[k]];
        out.leading_.push_back(c);
        out.row_of_column_[c] = static_cast<std::int64_t>(k);
        out.lead_mask_.set(c);
    }
    main_.clear();
    main_.shrink_to_fit();
    return out;
}

EchelonBasis echelonize(std::span<const BitRow> rows, std::size_t width)
{
    EchelonBuilder b(width);
    for (const auto& r : rows) b.insert(r);
    return std::move(b).finish();
}

EchelonBasis echelonize(std::span<const BitRow> rows)
{
    if (rows.empty()) throw std::invalid_argument("echelonize: width of an empty row list is unknown");
    return echelonize(rows, rows.front().width());
}

BitRow reduce(const BitRow& v, const EchelonBasis& basis)
{
    require_width(basis.width(), v.width(), "reduce");
    BitRow out = v;
    basis.reduce_in_place(out.words());
    return out;
}

std::pair<EchelonBasis, bool> incremental_insert(const EchelonBasis& basis, const BitRow& v)
{
    require_width(basis.width(), v.width(), "incremental_insert");
    EchelonBuilder b(basis);
    const bool accepted = b.insert(v);
    if (!accepted) return {basis, false};
    return {std::move(b).finish(), true};
}

std::vector<BitRow> left_kernel(std::span<const BitRow> rows, std::size_t width)
{
    const std::size_t m = rows.size();
    const std::size_t aug = width + m;
    EchelonBuilder b(aug);
    for (std::size_t k = 0; k < m; ++k) {
        require_width(width, rows[k].width(), "left_kernel");
        BitRow r(aug);
        for (auto c : rows[k].set_columns()) r.set(c);
        r.set(width + k);
        b.insert(r);
    }
    const EchelonBasis e = std::move(b).finish();
    std::vector<BitRow> out;
    for (std::size_t k = 0; k < e.rank(); ++k) {
        if (e.leading_columns()[k] < width) continue;
        BitRow c(m);
        const auto row = e.row(k);
        for (std::size_t j = 0; j < m; ++j)
            if (test_bit(row.data(), width + j)) c.set(j);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace hitcalc
