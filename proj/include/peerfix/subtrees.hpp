#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "peerfix/ast.hpp"

namespace peerfix {

// Multiset of structural fingerprints, one per internal AST node. Identifier
// and literal leaves are anonymized so the bag is name-insensitive.
struct SubtreeBag {
    std::unordered_map<uint64_t, int> counts;
    size_t total = 0;

    void add(uint64_t fp) {
        ++counts[fp];
        ++total;
    }
};

namespace detail {

inline uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t fnv1a(uint64_t h, const std::string& s) {
    return fnv1a(h, s.data(), s.size());
}

inline uint64_t subtree_fingerprint(const AstNode& n, SubtreeBag& bag) {
    uint64_t h = 0xcbf29ce484222325ULL;
    if (n.is_leaf) {
        h = fnv1a(h, n.kind);
        if (n.kind == "Identifier")
            h = fnv1a(h, "<ID>");
        else if (n.kind == "Literal")
            h = fnv1a(h, "<LIT>");
        else
            h = fnv1a(h, n.leaf_text);
        return h;
    }
    h = fnv1a(h, n.kind);
    for (const AstNode& c : n.children) {
        uint64_t ch = subtree_fingerprint(c, bag);
        h = fnv1a(h, &ch, sizeof(ch));
    }
    if (!n.children.empty()) bag.add(h);
    return h;
}

}  // namespace detail

/// One fingerprint per internal node (any non-leaf with children), computed
/// bottom-up over kinds with <ID>/<LIT> placeholder leaves.
inline SubtreeBag enumerate_subtrees(const Ast& ast) {
    SubtreeBag bag;
    detail::subtree_fingerprint(ast.root, bag);
    return bag;
}

/// Multiset-intersection size between two bags.
inline size_t bag_intersection(const SubtreeBag& a, const SubtreeBag& b) {
    size_t matched = 0;
    for (const auto& [fp, count] : a.counts) {
        auto it = b.counts.find(fp);
        if (it != b.counts.end()) matched += static_cast<size_t>(std::min(count, it->second));
    }
    return matched;
}

}  // namespace peerfix
