#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "vdw/error.hpp"

namespace vdw {

// 0-based color index.
using Color = int;

// An r-coloring of the integers 1..N. Storage is 0-based, positions are
// 1-based throughout the library to match the usual {1, ..., N} convention.
struct Coloring {
    std::vector<Color> colors;

    Coloring() = default;
    explicit Coloring(std::vector<Color> c) : colors(std::move(c)) {}

    int size() const { return static_cast<int>(colors.size()); }
    bool empty() const { return colors.empty(); }

    // Color of position `pos`, 1 <= pos <= size().
    Color at(int pos) const { return colors[static_cast<std::size_t>(pos) - 1]; }

    Color max_color() const {
        return colors.empty() ? -1 : *std::max_element(colors.begin(), colors.end());
    }

    // Number of distinct color indices present.
    int num_colors_used() const {
        std::vector<Color> v = colors;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return static_cast<int>(v.size());
    }

    bool operator==(const Coloring&) const = default;
};

// One decision problem: is there an r-coloring of 1..N with no
// monochromatic k-term arithmetic progression?
struct VdwInstance {
    int num_colors = 0;  // r
    int ap_length = 0;   // k
    int length = 0;      // N

    void validate() const {
        if (num_colors < 1)
            throw InvalidParameterError("number of colors must be at least 1");
        if (ap_length < 2)
            throw InvalidParameterError("AP length must be at least 2");
        if (length < 1)
            throw InvalidParameterError("sequence length must be at least 1");
    }
};

// An AP inside 1..N: positions start, start+diff, ..., start+(k-1)*diff.
struct Ap {
    int start = 0;
    int diff = 0;

    bool operator==(const Ap&) const = default;
};

// A monochromatic AP found during verification.
struct ApWitness {
    int start = 0;
    int diff = 0;
    Color color = 0;

    bool operator==(const ApWitness&) const = default;
};

struct VerificationReport {
    bool valid = false;
    std::vector<ApWitness> witnesses;  // empty iff valid
    std::int64_t ap_count_checked = 0;
    int implied_lower_bound = 0;  // N + 1, meaningful when valid
    int r_declared = 0;
    int colors_used = 0;
};

// Number of k-term APs inside 1..n: sum over d of (n - (k-1)*d).
inline std::int64_t count_aps(int n, int k) {
    if (k < 2) throw InvalidParameterError("AP length must be at least 2");
    if (n < 1) throw InvalidParameterError("sequence length must be at least 1");
    std::int64_t total = 0;
    const std::int64_t step = k - 1;
    for (std::int64_t d = 1; step * d <= n - 1; ++d) total += n - step * d;
    return total;
}

// All k-term APs inside 1..n, in ascending (diff, start) order.
inline std::vector<Ap> enumerate_aps(int n, int k) {
    if (k < 2) throw InvalidParameterError("AP length must be at least 2");
    if (n < 1) throw InvalidParameterError("sequence length must be at least 1");
    std::vector<Ap> aps;
    aps.reserve(static_cast<std::size_t>(count_aps(n, k)));
    const std::int64_t step = k - 1;
    for (int d = 1; step * d <= n - 1; ++d)
        for (int a = 1; a + step * d <= n; ++a) aps.push_back({a, d});
    return aps;
}

enum class WitnessPolicy {
    CollectAll,  // report every monochromatic AP
    FirstOnly,   // stop at the first one (search inner loops)
};

namespace detail {

// acc &= src >> shift, over equal-length word arrays.
inline void and_shifted(std::vector<std::uint64_t>& acc,
                        const std::vector<std::uint64_t>& src, int shift) {
    const int words = static_cast<int>(acc.size());
    const int word_shift = shift / 64;
    const int bit_shift = shift % 64;
    for (int i = 0; i < words; ++i) {
        const std::uint64_t lo =
            i + word_shift < words ? src[i + word_shift] : 0;
        std::uint64_t v;
        if (bit_shift == 0) {
            v = lo;
        } else {
            const std::uint64_t hi =
                i + word_shift + 1 < words ? src[i + word_shift + 1] : 0;
            v = (lo >> bit_shift) | (hi << (64 - bit_shift));
        }
        acc[i] &= v;
    }
}

}  // namespace detail

// Checks the defining property of a certificate: no k positions in
// arithmetic progression share a color. Scans one common difference at a
// time with per-color position bitmasks, so the k-fold intersection for a
// given d costs O(r * k * N/64) word operations.
inline VerificationReport verify(const Coloring& coloring, int k, int r_declared,
                                 WitnessPolicy policy = WitnessPolicy::CollectAll) {
    if (k < 2) throw InvalidParameterError("AP length must be at least 2");
    if (r_declared < 1)
        throw InvalidParameterError("number of colors must be at least 1");
    const int n = coloring.size();
    if (n < 1) throw InvalidParameterError("coloring must not be empty");

    for (int i = 1; i <= n; ++i) {
        const Color c = coloring.at(i);
        if (c < 0 || c >= r_declared)
            throw ColorOutOfRangeError("color " + std::to_string(c) +
                                           " at position " + std::to_string(i) +
                                           " out of range for r=" +
                                           std::to_string(r_declared),
                                       i, c);
    }

    VerificationReport report;
    report.r_declared = r_declared;
    report.colors_used = coloring.num_colors_used();
    report.implied_lower_bound = n + 1;

    const int words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> mask(
        static_cast<std::size_t>(r_declared),
        std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
    for (int i = 1; i <= n; ++i)
        mask[static_cast<std::size_t>(coloring.at(i))][(i - 1) / 64] |=
            std::uint64_t{1} << ((i - 1) % 64);

    std::vector<std::uint64_t> hits(static_cast<std::size_t>(words));
    std::vector<std::uint64_t> acc;
    const int max_d = (n - 1) / (k - 1);
    for (int d = 1; d <= max_d; ++d) {
        report.ap_count_checked += n - static_cast<std::int64_t>(k - 1) * d;
        std::fill(hits.begin(), hits.end(), 0);
        for (int c = 0; c < r_declared; ++c) {
            acc = mask[static_cast<std::size_t>(c)];
            for (int j = 1; j < k; ++j)
                detail::and_shifted(acc, mask[static_cast<std::size_t>(c)], j * d);
            for (int w = 0; w < words; ++w) hits[static_cast<std::size_t>(w)] |= acc[static_cast<std::size_t>(w)];
        }
        // Bit a-1 of hits: positions a, a+d, ..., a+(k-1)d are one color.
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = hits[static_cast<std::size_t>(w)];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                const int a = w * 64 + b + 1;
                report.witnesses.push_back({a, d, coloring.at(a)});
                if (policy == WitnessPolicy::FirstOnly) break;
            }
            if (policy == WitnessPolicy::FirstOnly && !report.witnesses.empty()) break;
        }
        if (policy == WitnessPolicy::FirstOnly && !report.witnesses.empty()) break;
    }

    report.valid = report.witnesses.empty();
    return report;
}

}  // namespace vdw
