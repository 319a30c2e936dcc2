// Independent reference computations used by the tests only. These stay
// deliberately naive (full string serialization, straight-line formulas) so
// they share no code path with the library implementations they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "peerfix/ast.hpp"

namespace oracle {

// Full parenthesized serialization of one subtree, names and literal values
// blanked out.
inline std::string serialize_subtree(const peerfix::AstNode& n) {
    if (n.is_leaf) {
        if (n.kind == "Identifier") return "Identifier=<ID>";
        if (n.kind == "Literal") return "Literal=<LIT>";
        return n.kind + "=" + n.leaf_text;
    }
    std::string out = "(" + n.kind;
    for (const auto& c : n.children) {
        out += ' ';
        out += serialize_subtree(c);
    }
    out += ')';
    return out;
}

// Multiset of serialized subtrees, one entry per internal node, gathered by
// a plain top-down walk.
inline std::map<std::string, int> subtree_multiset(const peerfix::AstNode& n) {
    std::map<std::string, int> bag;
    peerfix::for_each_node(n, [&](const peerfix::AstNode& m) {
        if (!m.is_leaf && !m.children.empty()) ++bag[serialize_subtree(m)];
    });
    return bag;
}

inline size_t count_internal_nodes(const peerfix::AstNode& n) {
    if (n.is_leaf) return 0;
    size_t total = n.children.empty() ? 0 : 1;
    for (const auto& c : n.children) total += count_internal_nodes(c);
    return total;
}

// Reference AST match: |multiset intersection| / |candidate bag|.
inline double ast_match(const peerfix::AstNode& candidate, const peerfix::AstNode& reference) {
    auto a = subtree_multiset(candidate);
    auto b = subtree_multiset(reference);
    long total_a = 0, matched = 0;
    for (const auto& [key, count] : a) {
        total_a += count;
        auto it = b.find(key);
        if (it != b.end()) matched += std::min(count, it->second);
    }
    if (total_a == 0) {
        long total_b = 0;
        for (const auto& [key, count] : b) total_b += count;
        return total_b == 0 ? 1.0 : 0.0;
    }
    return static_cast<double>(matched) / static_cast<double>(total_a);
}

// Straight-line Okapi BM25 over token-vector documents; idf floored at 1e-6,
// k1 = 1.2, b = 0.75, query terms counted with multiplicity.
inline std::vector<double> bm25_scores(const std::vector<std::string>& query,
                                       const std::vector<std::vector<std::string>>& docs) {
    const double k1 = 1.2, b = 0.75, eps = 1e-6;
    const double n_docs = static_cast<double>(docs.size());
    double total_len = 0;
    for (const auto& d : docs) total_len += static_cast<double>(d.size());
    const double avg_len = docs.empty() ? 0.0 : total_len / n_docs;

    std::map<std::string, int> df;
    for (const auto& d : docs) {
        std::map<std::string, bool> seen;
        for (const auto& t : d)
            if (!seen[t]) {
                seen[t] = true;
                ++df[t];
            }
    }
    std::vector<double> scores;
    for (const auto& d : docs) {
        std::map<std::string, int> tf;
        for (const auto& t : d) ++tf[t];
        double s = 0;
        for (const auto& term : query) {
            auto it = tf.find(term);
            if (it == tf.end()) continue;
            double n_t = static_cast<double>(df[term]);
            double idf = std::max(eps, std::log((n_docs - n_t + 0.5) / (n_t + 0.5)));
            double f = static_cast<double>(it->second);
            double denom = f + k1 * (1.0 - b + b * static_cast<double>(d.size()) / avg_len);
            s += idf * f * (k1 + 1.0) / denom;
        }
        scores.push_back(s);
    }
    return scores;
}

}  // namespace oracle
