#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sproute {

/// Execution mode for the data-parallel kernels. `serial` is the reference
/// path the tests compare against; `parallel` uses OpenMP when available.
/// Both produce identical results for identical inputs.
enum class Exec { serial, parallel };

/// Input file / malformed data error. `line` is 0 when no line applies.
struct ParseError : std::runtime_error {
    int line;
    explicit ParseError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

/// Invalid configuration value; `field` names the offending key.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(const std::string& field_name, const std::string& msg)
        : std::runtime_error(field_name + ": " + msg), field(field_name) {}
};

/// A runtime prerequisite is missing (untrained index, no strategies, ...).
struct PrereqError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-universe bitset over indices [0, size). Backed by 64-bit words.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool operator==(const Bitset& o) const { return words_ == o.words_; }
    bool operator!=(const Bitset& o) const { return words_ != o.words_; }
    /// Word-wise order; used only for deduplication, not for canonical output.
    bool operator<(const Bitset& o) const { return words_ < o.words_; }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                out.push_back(wi * 64 + b);
                w &= w - 1;
            }
        }
        return out;
    }

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Deterministic draws on top of mt19937_64. The standard distributions are not
// bit-stable across library implementations, these are.
inline std::size_t rng_index(std::mt19937_64& g, std::size_t n) {
    return static_cast<std::size_t>(g() % n);
}
inline double rng_unit(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}
inline int rng_range(std::mt19937_64& g, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

inline std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace sproute
