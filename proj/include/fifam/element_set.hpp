#ifndef FIFAM_ELEMENT_SET_HPP
#define FIFAM_ELEMENT_SET_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace fifam {

/// Subset of a ground set {1, ..., n}, stored as a bit vector.
///
/// Ground sets up to 128 elements live in two inline words; larger ones
/// spill to the heap with identical semantics. Trailing zero words are
/// ignored by every operation, so sets over different ground sizes compare
/// consistently.
class ElementSet {
public:
    ElementSet() = default;

    ElementSet(const ElementSet& other) { copy_from(other); }
    ElementSet& operator=(const ElementSet& other) {
        if (this != &other) copy_from(other);
        return *this;
    }
    ElementSet(ElementSet&&) noexcept = default;
    ElementSet& operator=(ElementSet&&) noexcept = default;

    static ElementSet from_elements(const std::vector<int>& elements) {
        ElementSet s;
        for (int e : elements) s.insert(e);
        return s;
    }

    /// 1-based element insertion.
    void insert(int element) {
        if (element < 1) throw std::invalid_argument("elements are 1-based positive integers");
        const std::size_t w = static_cast<std::size_t>(element - 1) / 64;
        ensure_words(w + 1);
        mutable_words()[w] |= std::uint64_t{1} << ((element - 1) % 64);
    }

    bool contains(int element) const {
        if (element < 1) return false;
        const std::size_t w = static_cast<std::size_t>(element - 1) / 64;
        if (w >= nwords_) return false;
        return (words()[w] >> ((element - 1) % 64)) & 1;
    }

    bool empty() const {
        for (std::uint64_t w : words())
            if (w) return false;
        return true;
    }

    int size() const {
        int c = 0;
        for (std::uint64_t w : words()) c += std::popcount(w);
        return c;
    }

    /// Largest element, or 0 for the empty set.
    int max_element() const {
        const auto ws = words();
        for (std::size_t i = ws.size(); i-- > 0;)
            if (ws[i]) return static_cast<int>(i * 64 + 64 - std::countl_zero(ws[i]));
        return 0;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        const auto ws = words();
        for (std::size_t i = 0; i < ws.size(); ++i) {
            std::uint64_t w = ws[i];
            while (w) {
                out.push_back(static_cast<int>(i * 64 + std::countr_zero(w) + 1));
                w &= w - 1;
            }
        }
        return out;
    }

    std::span<const std::uint64_t> words() const {
        return {storage(), nwords_};
    }

    bool operator==(const ElementSet& other) const {
        const auto a = words(), b = other.words();
        const std::size_t common = a.size() < b.size() ? a.size() : b.size();
        for (std::size_t i = 0; i < common; ++i)
            if (a[i] != b[i]) return false;
        for (std::size_t i = common; i < a.size(); ++i)
            if (a[i]) return false;
        for (std::size_t i = common; i < b.size(); ++i)
            if (b[i]) return false;
        return true;
    }
    bool operator!=(const ElementSet& other) const { return !(*this == other); }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        int trailing = 0;
        for (std::uint64_t w : words()) {
            if (w == 0) { ++trailing; continue; }
            for (; trailing > 0; --trailing) h = h * 0x100000001b3ull;
            h = (h ^ w) * 0x100000001b3ull;
        }
        return h;
    }

private:
    static constexpr std::size_t kInlineWords = 2;

    std::size_t nwords_ = 0;
    std::array<std::uint64_t, kInlineWords> inline_{};
    std::unique_ptr<std::uint64_t[]> heap_;

    const std::uint64_t* storage() const { return heap_ ? heap_.get() : inline_.data(); }
    std::uint64_t* mutable_words() { return heap_ ? heap_.get() : inline_.data(); }

    void ensure_words(std::size_t need) {
        if (need <= nwords_) return;
        if (need <= kInlineWords && !heap_) {
            for (std::size_t i = nwords_; i < need; ++i) inline_[i] = 0;
            nwords_ = need;
            return;
        }
        auto grown = std::make_unique<std::uint64_t[]>(need);
        std::memcpy(grown.get(), storage(), nwords_ * sizeof(std::uint64_t));
        std::memset(grown.get() + nwords_, 0, (need - nwords_) * sizeof(std::uint64_t));
        heap_ = std::move(grown);
        nwords_ = need;
    }

    void copy_from(const ElementSet& other) {
        nwords_ = other.nwords_;
        if (nwords_ > kInlineWords) {
            heap_ = std::make_unique<std::uint64_t[]>(nwords_);
            std::memcpy(heap_.get(), other.storage(), nwords_ * sizeof(std::uint64_t));
        } else {
            heap_.reset();
            inline_ = other.inline_;
        }
    }

    friend ElementSet set_intersection(const ElementSet&, const ElementSet&);
    friend ElementSet set_union(const ElementSet&, const ElementSet&);
    friend ElementSet set_difference(const ElementSet&, const ElementSet&);
};

inline std::int64_t intersection_size(const ElementSet& a, const ElementSet& b) {
    const auto wa = a.words(), wb = b.words();
    const std::size_t common = wa.size() < wb.size() ? wa.size() : wb.size();
    std::int64_t c = 0;
    for (std::size_t i = 0; i < common; ++i) c += std::popcount(wa[i] & wb[i]);
    return c;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    const auto wa = a.words(), wb = b.words();
    const std::size_t common = wa.size() < wb.size() ? wa.size() : wb.size();
    out.ensure_words(common);
    for (std::size_t i = 0; i < common; ++i) out.mutable_words()[i] = wa[i] & wb[i];
    return out;
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    const auto wa = a.words(), wb = b.words();
    const std::size_t total = wa.size() > wb.size() ? wa.size() : wb.size();
    out.ensure_words(total);
    for (std::size_t i = 0; i < total; ++i) {
        const std::uint64_t x = i < wa.size() ? wa[i] : 0;
        const std::uint64_t y = i < wb.size() ? wb[i] : 0;
        out.mutable_words()[i] = x | y;
    }
    return out;
}

inline ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    const auto wa = a.words(), wb = b.words();
    out.ensure_words(wa.size());
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t y = i < wb.size() ? wb[i] : 0;
        out.mutable_words()[i] = wa[i] & ~y;
    }
    return out;
}

inline bool is_subset(const ElementSet& a, const ElementSet& b) {
    const auto wa = a.words(), wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t y = i < wb.size() ? wb[i] : 0;
        if (wa[i] & ~y) return false;
    }
    return true;
}

inline bool sets_intersect(const ElementSet& a, const ElementSet& b) {
    const auto wa = a.words(), wb = b.words();
    const std::size_t common = wa.size() < wb.size() ? wa.size() : wb.size();
    for (std::size_t i = 0; i < common; ++i)
        if (wa[i] & wb[i]) return true;
    return false;
}

/// Lexicographic order on the ascending element lists, e.g. {1,2} < {1,2,3} < {1,3}.
inline bool lex_less(const ElementSet& a, const ElementSet& b) {
    const auto ea = a.elements(), eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

/// Candidate order used throughout: by cardinality, ties by lex_less.
inline bool size_lex_less(const ElementSet& a, const ElementSet& b) {
    const int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return lex_less(a, b);
}

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

} // namespace fifam

#endif
