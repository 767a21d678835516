#ifndef HOMOTOR_SUBSETS_HPP
#define HOMOTOR_SUBSETS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace homotor {

using Mask = std::uint32_t;

inline constexpr std::size_t max_subset_universe = 24;

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline std::vector<std::size_t> mask_elements(Mask m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; m; ++i, m >>= 1)
        if (m & 1u) out.push_back(i);
    return out;
}

/// p-subsets of {0..n-1}, in lexicographic order of their sorted element lists.
inline std::vector<Mask> subsets_of_size(std::size_t n, std::size_t p) {
    if (n > max_subset_universe) throw Error(ErrorCode::InvalidArgument, "subset universe too large");
    std::vector<Mask> out;
    if (p > n) return out;
    std::vector<std::size_t> idx(p);
    for (std::size_t i = 0; i < p; ++i) idx[i] = i;
    while (true) {
        Mask m = 0;
        for (auto i : idx) m |= Mask{1} << i;
        out.push_back(m);
        std::size_t k = p;
        while (k > 0 && idx[k - 1] == n - p + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Position of element j among the elements of m (number of smaller elements).
inline std::size_t rank_in(Mask m, std::size_t j) { return popcount(m & ((Mask{1} << j) - 1)); }

inline std::string subset_label(Mask m) {
    std::string s = "{";
    bool first = true;
    for (auto i : mask_elements(m)) {
        s += (first ? "" : ",") + std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

}  // namespace homotor

#endif
