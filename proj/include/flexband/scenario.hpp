#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flexband/errors.hpp"

namespace flexband {

inline constexpr int kMaxTreeDepth = 14;   // at most 2^14 leaves
inline constexpr int kMaxSocCorners = 12;  // at most 2^12 box corners

// One node of the binary scenario tree. The node at depth t (1-based) is the
// bit-string of band-endpoint choices for periods 1..t; bit 0 picks the lower
// endpoint, bit 1 the upper. Nodes with a common prefix share the prefix's
// variable blocks, which is exactly nonanticipativity.
struct TreeNode {
    int depth = 1;          // 1..T
    std::uint32_t bits = 0; // prefix of endpoint choices, period 1 at the MSB side
    int index = 0;          // position in the breadth-first ordering
    int parent = -1;        // breadth-first index of the depth-1 prefix, -1 at depth 1
    bool last_bit() const { return bits & 1u; }
};

inline int tree_block_count(int depth) { return (2 << depth) - 2; } // 2^{depth+1} - 2

// All tree nodes in breadth-first order: depth 1 first, 2^t nodes per depth t.
inline std::vector<TreeNode> enumerate_prefixes(int depth) {
    if (depth < 1) throw ValidationError("scenario tree depth must be >= 1");
    if (depth > kMaxTreeDepth)
        throw SizeCapError("scenario tree with " + std::to_string(depth) + " periods needs 2^" +
                           std::to_string(depth) + " leaves, above the 2^" +
                           std::to_string(kMaxTreeDepth) + " cap");
    std::vector<TreeNode> nodes;
    nodes.reserve(tree_block_count(depth));
    for (int t = 1; t <= depth; ++t) {
        const int base = (1 << t) - 2;       // nodes before depth t
        const int parent_base = (1 << (t - 1)) - 2;
        for (std::uint32_t v = 0; v < (1u << t); ++v) {
            TreeNode n;
            n.depth = t;
            n.bits = v;
            n.index = base + static_cast<int>(v);
            n.parent = (t == 1) ? -1 : parent_base + static_cast<int>(v >> 1);
            nodes.push_back(n);
        }
    }
    return nodes;
}

// A corner of a per-ESS box (or a per-period endpoint pattern): bit i set
// means the upper end for dimension i.
struct VertexPattern {
    int dims = 0;
    std::uint32_t bits = 0;
    bool upper(int i) const { return (bits >> i) & 1u; }
};

// All 2^n corners, lexicographic in the bit value. n = 0 yields the single
// empty pattern.
inline std::vector<VertexPattern> enumerate_soc_corners(int n_ess) {
    if (n_ess < 0) throw ValidationError("corner count must be >= 0");
    if (n_ess > kMaxSocCorners)
        throw SizeCapError(std::to_string(n_ess) + " ESSs need 2^" + std::to_string(n_ess) +
                           " box corners, above the 2^" + std::to_string(kMaxSocCorners) + " cap");
    std::vector<VertexPattern> out;
    out.reserve(1u << n_ess);
    for (std::uint32_t v = 0; v < (1u << n_ess); ++v) out.push_back({n_ess, v});
    return out;
}

// Endpoint patterns over T periods; reuses the corner enumeration and cap.
inline std::vector<VertexPattern> enumerate_endpoint_patterns(int periods) {
    if (periods < 1) throw ValidationError("pattern length must be >= 1");
    if (periods > kMaxTreeDepth)
        throw SizeCapError(std::to_string(periods) + " periods need 2^" + std::to_string(periods) +
                           " endpoint patterns, above the 2^" + std::to_string(kMaxTreeDepth) + " cap");
    std::vector<VertexPattern> out;
    out.reserve(1u << periods);
    for (std::uint32_t v = 0; v < (1u << periods); ++v) out.push_back({periods, v});
    return out;
}

} // namespace flexband
